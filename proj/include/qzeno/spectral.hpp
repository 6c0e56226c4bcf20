// spectral.hpp — environment models: a main mode omega0 plus coupled modes {(omega_k, g_k)}

#pragma once

#include "qzeno/types.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qzeno {

template <typename Scalar>
struct Mode {
    Scalar omega{};     // mode angular frequency
    Scalar coupling{};  // g_k >= 0, same units as omega

    friend bool operator==(const Mode&, const Mode&) = default;
};

// Main-mode frequency plus environment modes sorted ascending by omega.
// Immutable once built through one of the builders below; safe for
// concurrent reads.
template <typename Scalar>
struct SpectralModel {
    Scalar omega0{};
    std::vector<Mode<Scalar>> modes;
    std::string label;

    Index mode_count() const { return static_cast<Index>(modes.size()); }

    friend bool operator==(const SpectralModel&, const SpectralModel&) = default;
};

// ------------------------------- validation ---------------------------------

template <typename Scalar>
void validate(const SpectralModel<Scalar>& m) {
    if (!std::isfinite(static_cast<double>(m.omega0)))
        throw std::invalid_argument("SpectralModel: omega0 must be finite");
    if (m.modes.empty())
        throw std::invalid_argument("SpectralModel: mode list must be non-empty");
    bool any_coupled = false;
    for (const auto& mode : m.modes) {
        if (!std::isfinite(static_cast<double>(mode.omega)) ||
            !std::isfinite(static_cast<double>(mode.coupling)))
            throw std::invalid_argument("SpectralModel: non-finite mode entry");
        if (mode.coupling < Scalar(0))
            throw std::invalid_argument("SpectralModel: negative coupling");
        if (mode.coupling > Scalar(0)) any_coupled = true;
    }
    if (!any_coupled)
        throw std::invalid_argument("SpectralModel: at least one coupling must be positive");
    for (std::size_t i = 1; i < m.modes.size(); ++i) {
        if (m.modes[i].omega < m.modes[i - 1].omega)
            throw std::invalid_argument("SpectralModel: modes must be sorted ascending by omega");
        if (m.modes[i].omega == m.modes[i - 1].omega &&
            (m.modes[i].coupling == Scalar(0) || m.modes[i - 1].coupling == Scalar(0)))
            throw std::invalid_argument("SpectralModel: duplicate frequency with zero coupling");
    }
}

// -------------------------------- builders ----------------------------------

// One environment mode degenerate with the main mode.
template <typename Scalar>
SpectralModel<Scalar> build_two_mode(Scalar omega0, Scalar g) {
    if (!std::isfinite(static_cast<double>(g)) || g <= Scalar(0))
        throw std::invalid_argument("build_two_mode: coupling must be finite and positive");
    SpectralModel<Scalar> m;
    m.omega0 = omega0;
    m.modes = {Mode<Scalar>{omega0, g}};
    m.label = "two_mode";
    validate(m);
    return m;
}

// K uniformly spaced modes spanning [omega0 - W/2, omega0 + W/2], all with
// coupling g. K must be odd so one mode sits exactly at omega0; the grid
// spacing is W/(K-1).
template <typename Scalar>
SpectralModel<Scalar> build_flat_band(Scalar omega0, Scalar g, Index n_modes, Scalar bandwidth) {
    if (n_modes < 3 || n_modes % 2 == 0)
        throw std::invalid_argument("build_flat_band: mode count must be odd and >= 3");
    if (!std::isfinite(static_cast<double>(bandwidth)) || bandwidth <= Scalar(0))
        throw std::invalid_argument("build_flat_band: bandwidth must be finite and positive");
    if (!std::isfinite(static_cast<double>(g)) || g <= Scalar(0))
        throw std::invalid_argument("build_flat_band: coupling must be finite and positive");
    if (!std::isfinite(static_cast<double>(omega0)))
        throw std::invalid_argument("build_flat_band: omega0 must be finite");

    const Scalar spacing = bandwidth / Scalar(n_modes - 1);
    const Index mid = (n_modes - 1) / 2;  // resonant mode index, on-grid by K odd
    SpectralModel<Scalar> m;
    m.omega0 = omega0;
    m.modes.reserve(static_cast<std::size_t>(n_modes));
    for (Index j = 0; j < n_modes; ++j)
        m.modes.push_back(Mode<Scalar>{omega0 + Scalar(j - mid) * spacing, g});
    m.label = "flat_band";
    validate(m);
    return m;
}

// Grid spacing of a uniformly spaced model; throws if spacings differ by more
// than a few ulps (exposed for the golden-rule Gamma prediction).
template <typename Scalar>
Scalar uniform_spacing(const SpectralModel<Scalar>& m) {
    if (m.modes.size() < 2)
        throw std::invalid_argument("uniform_spacing: need at least two modes");
    const Scalar d = m.modes[1].omega - m.modes[0].omega;
    const Scalar scale = std::max(std::abs(m.modes.front().omega), std::abs(m.modes.back().omega));
    const Scalar tol = Scalar(4) * std::numeric_limits<Scalar>::epsilon() * std::max(scale, d);
    for (std::size_t i = 1; i < m.modes.size(); ++i)
        if (std::abs((m.modes[i].omega - m.modes[i - 1].omega) - d) > tol)
            throw std::invalid_argument("uniform_spacing: mode grid is not uniform");
    return d;
}

// 2*pi over the smallest gap between distinct mode frequencies. A discrete
// bath deviates from its continuum limit beyond this time; infinity when
// there are fewer than two distinct frequencies.
template <typename Scalar>
Scalar recurrence_time(const SpectralModel<Scalar>& m) {
    Scalar min_gap = std::numeric_limits<Scalar>::infinity();
    for (std::size_t i = 1; i < m.modes.size(); ++i) {
        const Scalar gap = m.modes[i].omega - m.modes[i - 1].omega;
        if (gap > Scalar(0)) min_gap = std::min(min_gap, gap);
    }
    if (!std::isfinite(static_cast<double>(min_gap)))
        return std::numeric_limits<Scalar>::infinity();
    return Scalar(2) * std::numbers::pi_v<Scalar> / min_gap;
}

// ----------------------------- text round-trip -------------------------------
//
// Line-oriented key=value format:
//   # comment (anywhere on a line)
//   omega0 = <number>
//   mode = <omega_k>,<g_k>        (repeated)
//   label = <free-form tag>       (optional)
// Decimal and scientific notation accepted. Unknown keys are rejected.

namespace detail {

template <typename Scalar>
Scalar parse_number(const std::string& text, const std::string& where) {
    std::istringstream in(text);
    Scalar value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof())
        throw std::invalid_argument("model text: cannot parse number '" + text + "' for " + where);
    if (!std::isfinite(static_cast<double>(value)))
        throw std::invalid_argument("model text: non-finite value for " + where);
    return value;
}

inline std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

} // namespace detail

template <typename Scalar>
SpectralModel<Scalar> load_custom(std::istream& in) {
    SpectralModel<Scalar> m;
    bool have_omega0 = false;
    bool have_label = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("model text line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key == "omega0") {
            if (have_omega0)
                throw std::invalid_argument("model text: duplicate omega0");
            m.omega0 = detail::parse_number<Scalar>(value, "omega0");
            have_omega0 = true;
        } else if (key == "mode") {
            const auto comma = value.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("model text line " + std::to_string(line_no) +
                                            ": mode needs <omega>,<coupling>");
            Mode<Scalar> mode;
            mode.omega = detail::parse_number<Scalar>(detail::trim(value.substr(0, comma)), "mode omega");
            mode.coupling =
                detail::parse_number<Scalar>(detail::trim(value.substr(comma + 1)), "mode coupling");
            m.modes.push_back(mode);
        } else if (key == "label") {
            if (have_label)
                throw std::invalid_argument("model text: duplicate label");
            m.label = value;
            have_label = true;
        } else {
            throw std::invalid_argument("model text line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    if (!have_omega0)
        throw std::invalid_argument("model text: missing omega0");
    std::stable_sort(m.modes.begin(), m.modes.end(),
                     [](const Mode<Scalar>& a, const Mode<Scalar>& b) { return a.omega < b.omega; });
    validate(m);
    return m;
}

template <typename Scalar>
SpectralModel<Scalar> load_custom(const std::string& text) {
    std::istringstream in(text);
    return load_custom<Scalar>(in);
}

// Full-precision serialization; load_custom of the output reproduces the
// model exactly.
template <typename Scalar>
void serialize(std::ostream& out, const SpectralModel<Scalar>& m) {
    out.precision(std::numeric_limits<Scalar>::max_digits10);
    out << "omega0 = " << m.omega0 << "\n";
    if (!m.label.empty()) out << "label = " << m.label << "\n";
    for (const auto& mode : m.modes)
        out << "mode = " << mode.omega << "," << mode.coupling << "\n";
}

template <typename Scalar>
std::string serialize(const SpectralModel<Scalar>& m) {
    std::ostringstream out;
    serialize(out, m);
    return out.str();
}

} // namespace qzeno
