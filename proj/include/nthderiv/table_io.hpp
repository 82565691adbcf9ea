#pragma once

// Flat key=value derivative table files.
//
//   parametric:  t0=1            implicit:  x0=0.6
//                f=2,2,0         (f', f'', ...)   y0=0.8
//                g=3,6,6         (g', g'', ...)   F_1_0=1.2   (F_{x^a y^b} as F_a_b)
//
// '#' starts a comment; blank lines are ignored. An implicit table without
// F_0_0 is taken to lie on the curve.

#include "errors.hpp"
#include "oracle.hpp"

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace nthderiv {

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_real(std::string_view text, std::string_view what)
{
    const auto s = std::string(trim(text));
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) {
        throw InvalidArgument("malformed number '" + s + "' for " + std::string(what));
    }
    return v;
}

inline int parse_int(std::string_view text, std::string_view what)
{
    const auto s = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidArgument("malformed integer '" + std::string(s) + "' for " + std::string(what));
    }
    return v;
}

} // namespace detail

inline std::vector<double> parse_real_list(std::string_view text, std::string_view what)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(detail::parse_real(text.substr(start, comma - start), what));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

/// Parses "a_b" into the partial order pair (a, b).
inline std::pair<int, int> parse_partial_key(std::string_view key)
{
    const auto us = key.find('_');
    if (us == std::string_view::npos) {
        throw InvalidArgument("partial key '" + std::string(key) + "' must look like a_b");
    }
    const int a = detail::parse_int(key.substr(0, us), "partial x-order");
    const int b = detail::parse_int(key.substr(us + 1), "partial y-order");
    if (a < 0 || b < 0) {
        throw InvalidArgument("partial orders must be nonnegative");
    }
    return {a, b};
}

/// Incrementally fills a table from key=value assignments.
class TableBuilder {
public:
    void set(std::string_view key_text, std::string_view value)
    {
        const auto key = detail::trim(key_text);
        if (key == "t0") {
            mark(parametric_);
            p_.t0 = detail::parse_real(value, key);
        } else if (key == "f") {
            mark(parametric_);
            p_.f = parse_real_list(value, key);
            has_f_ = true;
        } else if (key == "g") {
            mark(parametric_);
            p_.g = parse_real_list(value, key);
        } else if (key == "x0") {
            mark(implicit_);
            i_.x0 = detail::parse_real(value, key);
        } else if (key == "y0") {
            mark(implicit_);
            i_.y0 = detail::parse_real(value, key);
        } else if (key.starts_with("F_")) {
            mark(implicit_);
            const auto ab = parse_partial_key(key.substr(2));
            const double v = detail::parse_real(value, key);
            if (ab == std::pair{0, 0}) {
                i_.value = v;
            } else {
                i_.partials[ab] = v;
            }
        } else {
            throw InvalidArgument("unknown table key '" + std::string(key) + "'");
        }
    }

    void set_assignment(std::string_view line)
    {
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidArgument("table line '" + std::string(line) + "' is not key=value");
        }
        set(line.substr(0, eq), line.substr(eq + 1));
    }

    bool empty() const noexcept { return !parametric_ && !implicit_; }

    DerivativeTable build() const
    {
        if (parametric_) {
            if (!has_f_) {
                throw InvalidArgument("parametric table needs an f=... line");
            }
            return p_;
        }
        if (implicit_) {
            return i_;
        }
        throw InvalidArgument("empty derivative table");
    }

private:
    void mark(bool& which)
    {
        which = true;
        if (parametric_ && implicit_) {
            throw InvalidArgument("table mixes parametric (t0, f, g) and implicit (x0, y0, F_a_b) keys");
        }
    }

    bool parametric_ = false;
    bool implicit_ = false;
    bool has_f_ = false;
    ParametricTable p_;
    ImplicitTable i_;
};

inline DerivativeTable parse_table(std::istream& in)
{
    TableBuilder builder;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = detail::trim(view);
        if (!view.empty()) {
            builder.set_assignment(view);
        }
    }
    return builder.build();
}

inline DerivativeTable parse_table(const std::string& text)
{
    std::istringstream in(text);
    return parse_table(in);
}

} // namespace nthderiv
