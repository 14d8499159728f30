#include "equistop/region.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace equistop {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_bound(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    std::ostringstream s;
    s.precision(12);
    s << v;
    return s.str();
}

// Minimal recursive-descent evaluator: numbers, identifiers (macros),
// + - * / and parentheses.  Used for region-literal bounds such as
// "0.5*a_star" or "(lambda/(1+lambda))*K".
class ExprParser {
public:
    ExprParser(const std::string& text, const std::map<std::string, double>& macros)
        : text_(text), macros_(macros) {}

    double parse() {
        double v = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw std::invalid_argument("trailing characters in expression: '" + text_ + "'");
        return v;
    }

private:
    double expr() {
        double v = term();
        for (;;) {
            skip_ws();
            if (consume('+')) v += term();
            else if (consume('-')) v -= term();
            else return v;
        }
    }
    double term() {
        double v = factor();
        for (;;) {
            skip_ws();
            if (consume('*')) v *= factor();
            else if (consume('/')) v /= factor();
            else return v;
        }
    }
    double factor() {
        skip_ws();
        if (consume('-')) return -factor();
        if (consume('+')) return factor();
        if (consume('(')) {
            double v = expr();
            skip_ws();
            if (!consume(')'))
                throw std::invalid_argument("unbalanced parentheses in '" + text_ + "'");
            return v;
        }
        if (pos_ < text_.size() && (std::isalpha(text_[pos_]) || text_[pos_] == '_')) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(text_[pos_]) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            if (name == "inf") return kInf;
            auto it = macros_.find(name);
            if (it == macros_.end())
                throw std::invalid_argument("unknown macro '" + name + "' in region literal");
            return it->second;
        }
        std::size_t consumed = 0;
        double v;
        try {
            v = std::stod(text_.substr(pos_), &consumed);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse number in '" + text_ + "'");
        }
        pos_ += consumed;
        return v;
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(text_[pos_])) ++pos_;
    }
    bool consume(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    const std::string& text_;
    const std::map<std::string, double>& macros_;
    std::size_t pos_ = 0;
};

double eval_bound(const std::string& text,
                  const std::map<std::string, double>& macros) {
    return ExprParser(text, macros).parse();
}

}  // namespace

RegionSet RegionSet::all() {
    RegionSet r;
    r.intervals_.push_back({-kInf, kInf});
    return r;
}

bool RegionSet::is_all() const {
    return intervals_.size() == 1 && intervals_[0].lo == -kInf &&
           intervals_[0].hi == kInf;
}

RegionSet RegionSet::interval(double lo, double hi) {
    return from_intervals({{lo, hi}});
}

RegionSet RegionSet::from_intervals(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.lo <= iv.hi))
            throw std::invalid_argument("region: interval requires lo <= hi");
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    RegionSet r;
    for (const auto& iv : intervals) {
        if (!r.intervals_.empty() && iv.lo <= r.intervals_.back().hi) {
            r.intervals_.back().hi = std::max(r.intervals_.back().hi, iv.hi);
        } else {
            r.intervals_.push_back(iv);
        }
    }
    return r;
}

bool RegionSet::contains(double x) const {
    auto it = std::upper_bound(
        intervals_.begin(), intervals_.end(), x,
        [](double v, const Interval& iv) { return v < iv.lo; });
    if (it == intervals_.begin()) return false;
    --it;
    return x <= it->hi;
}

RegionSet RegionSet::intersect(const RegionSet& other) const {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < intervals_.size() && j < other.intervals_.size()) {
        const Interval& a = intervals_[i];
        const Interval& b = other.intervals_[j];
        const double lo = std::max(a.lo, b.lo);
        const double hi = std::min(a.hi, b.hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (a.hi < b.hi) ++i;
        else ++j;
    }
    return from_intervals(std::move(out));
}

RegionSet RegionSet::unite(const RegionSet& other) const {
    std::vector<Interval> out(intervals_.begin(), intervals_.end());
    out.insert(out.end(), other.intervals_.begin(), other.intervals_.end());
    return from_intervals(std::move(out));
}

std::pair<double, double> RegionSet::neighbors(double x, double space_lo,
                                               double space_hi) const {
    if (contains(x))
        throw std::invalid_argument("neighbors: x lies inside the region");
    double left = space_lo, right = space_hi;
    for (const auto& iv : intervals_) {
        if (iv.hi < x) left = iv.hi;
        if (iv.lo > x) {
            right = iv.lo;
            break;
        }
    }
    return {left, right};
}

RegionSet RegionSet::from_mask(const Grid& grid, const std::vector<bool>& mask,
                               int merge_gap) {
    if (static_cast<int>(mask.size()) != grid.size())
        throw std::invalid_argument("from_mask: mask length must equal grid size");
    std::vector<Interval> intervals;
    int i = 0;
    const int n = grid.size();
    while (i < n) {
        if (!mask[i]) {
            ++i;
            continue;
        }
        int j = i;
        for (;;) {
            while (j + 1 < n && mask[j + 1]) ++j;
            // Absorb an interior gap of at most merge_gap cells.
            int k = j + 1;
            while (k < n && !mask[k]) ++k;
            if (k < n && k - (j + 1) <= merge_gap) {
                j = k;
                continue;
            }
            break;
        }
        intervals.push_back({grid.points[i], grid.points[j]});
        i = j + 1;
    }
    return from_intervals(std::move(intervals));
}

std::vector<bool> RegionSet::to_mask(const Grid& grid) const {
    std::vector<bool> mask(grid.size());
    for (int i = 0; i < grid.size(); ++i) mask[i] = contains(grid.points[i]);
    return mask;
}

std::string RegionSet::to_string() const {
    if (is_empty()) return "empty";
    if (is_all()) return "all";
    std::ostringstream s;
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (i) s << "∪";
        s << "[" << format_bound(intervals_[i].lo) << ","
          << format_bound(intervals_[i].hi) << "]";
    }
    return s.str();
}

RegionSet RegionSet::parse(const std::string& text,
                           const std::map<std::string, double>& macros) {
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    if (trimmed == "empty" || trimmed == "{}") return RegionSet::empty();
    if (trimmed == "all") return RegionSet::all();

    // Split on union separators: "∪" (UTF-8 e2 88 aa) or a bare u/U between
    // interval pieces.
    std::vector<std::string> pieces;
    std::string current;
    for (std::size_t i = 0; i < trimmed.size();) {
        if (trimmed.compare(i, 3, "\xe2\x88\xaa") == 0) {
            pieces.push_back(current);
            current.clear();
            i += 3;
        } else if ((trimmed[i] == 'u' || trimmed[i] == 'U') && !current.empty() &&
                   (current.back() == ']' || current.back() == ')')) {
            pieces.push_back(current);
            current.clear();
            ++i;
        } else {
            current.push_back(trimmed[i]);
            ++i;
        }
    }
    pieces.push_back(current);

    std::vector<Interval> intervals;
    for (const auto& piece : pieces) {
        if (piece.empty())
            throw std::invalid_argument("region literal: empty interval piece");
        if (piece.front() != '[' && piece.front() != '(')
            throw std::invalid_argument("region literal must start with '[' or '(': " + piece);
        if (piece.back() != ']' && piece.back() != ')')
            throw std::invalid_argument("region literal must end with ']' or ')': " + piece);
        const std::string body = piece.substr(1, piece.size() - 2);
        // Split on the top-level comma (expressions may contain parentheses).
        int depth = 0;
        std::size_t comma = std::string::npos;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '(') ++depth;
            else if (body[i] == ')') --depth;
            else if (body[i] == ',' && depth == 0) {
                comma = i;
                break;
            }
        }
        if (comma == std::string::npos)
            throw std::invalid_argument("interval needs two comma-separated bounds: " + piece);
        const double lo = eval_bound(body.substr(0, comma), macros);
        const double hi = eval_bound(body.substr(comma + 1), macros);
        if (!(lo <= hi))
            throw std::invalid_argument("interval bounds out of order: " + piece);
        intervals.push_back({lo, hi});
    }
    return from_intervals(std::move(intervals));
}

}  // namespace equistop
