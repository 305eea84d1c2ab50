#include "hyperfoil/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hyperfoil {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

}  // namespace

void write_run_csv(const std::string& path, const RunRecord& rec) {
    auto out = open_out(path);
    out << "t";
    for (int c = 0; c < rec.spec.ncomp(); ++c) out << ",l2_w" << c + 1;
    for (int c = 0; c < rec.spec.ncomp(); ++c) out << ",sup_w" << c + 1;
    out << ",support_radius\n";
    for (const auto& row : rec.monitor) {
        out << format_double(row.t);
        for (double v : row.l2) out << "," << format_double(v);
        for (double v : row.sup) out << "," << format_double(v);
        out << "," << format_double(row.support_radius) << "\n";
    }
}

void write_slices_csv(const std::string& path, const PresetResult& res) {
    auto out = open_out(path);
    out << "T,component,E1,E2,E3,spread,EG,mass_term,margin\n";
    // margins are defined per component starting at the second ladder point
    auto margin_for = [&](int comp, double T) {
        if (comp >= static_cast<int>(res.margins.size())) return 0.0;
        for (const auto& m : res.margins[comp])
            if (std::abs(m.T - T) < 1e-12) return m.margin_rel;
        return 0.0;
    };
    for (const auto& rep : res.full_slices) {
        out << format_double(rep.T) << "," << rep.comp + 1 << ","
            << format_double(rep.energy.e_expr1) << "," << format_double(rep.energy.e_expr2)
            << "," << format_double(rep.energy.e_expr3) << ","
            << format_double(rep.energy.spread) << "," << format_double(rep.e_curved) << ","
            << format_double(rep.energy.mass_term) << ","
            << format_double(margin_for(rep.comp, rep.T)) << "\n";
    }
}

std::vector<DecaySeries> decay_series(const PresetResult& res) {
    std::vector<DecaySeries> out;
    const int nc = res.spec.ncomp();
    struct Pick {
        const char* quantity;
        const char* region;
        double DecaySups::* member;
        bool interior;
    };
    const Pick picks[] = {
        {"sup_u", "interior", &DecaySups::sup_u, true},
        {"t32_db_u", "lambda_prime", &DecaySups::hyperboloidal_deriv, false},
        {"t32_Tt_du", "lambda_prime", &DecaySups::weighted_partial, false},
        {"t32_mass_u", "lambda_prime", &DecaySups::mass_term, false},
        {"t32_nd_u", "exterior", &DecaySups::cone_tangential_ext, false},
    };
    for (int c = 0; c < nc; ++c) {
        for (const auto& pick : picks) {
            DecaySeries s;
            s.quantity = std::string(pick.quantity) + "_w" + std::to_string(c + 1);
            s.region = pick.region;
            const auto& reports = pick.interior ? res.interior_slices : res.full_slices;
            for (const auto& rep : reports) {
                if (rep.comp != c) continue;
                s.T.push_back(rep.T);
                s.value.push_back(rep.sups.*(pick.member));
            }
            bool positive = !s.value.empty() &&
                            std::all_of(s.value.begin(), s.value.end(),
                                        [](double v) { return v > 0.0; });
            if (positive && s.T.size() >= 5) {
                s.fit = decay_fit(s.T, s.value);
                s.fitted = true;
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

void write_decay_csv(const std::string& path, const PresetResult& res) {
    auto out = open_out(path);
    out << "quantity,region,exponent,stderr,n_points\n";
    for (const auto& s : decay_series(res)) {
        if (!s.fitted) continue;
        out << s.quantity << "," << s.region << "," << format_double(s.fit.exponent) << ","
            << format_double(s.fit.stderr_) << "," << s.fit.n << "\n";
    }
}

void write_decay_svg(const std::string& path, const std::vector<DecaySeries>& series) {
    const int W = 640, H = 480, ML = 70, MR = 20, MT = 20, MB = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (size_t k = 0; k < s.T.size(); ++k) {
            if (!(s.value[k] > 0.0)) continue;
            xmin = std::min(xmin, std::log10(s.T[k]));
            xmax = std::max(xmax, std::log10(s.T[k]));
            ymin = std::min(ymin, std::log10(s.value[k]));
            ymax = std::max(ymax, std::log10(s.value[k]));
        }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
        ymin = -1;
        ymax = 0;
    }
    if (xmax - xmin < 1e-9) xmax = xmin + 1;
    if (ymax - ymin < 1e-9) ymax = ymin + 1;
    auto X = [&](double lx) { return ML + (lx - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto Y = [&](double ly) { return H - MB - (ly - ymin) / (ymax - ymin) * (H - MT - MB); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                            "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    auto out = open_out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    // axes
    out << "<line x1='" << ML << "' y1='" << H - MB << "' x2='" << W - MR << "' y2='" << H - MB
        << "' stroke='black'/>\n";
    out << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << H - MB
        << "' stroke='black'/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double lx = xmin + k * (xmax - xmin) / 4;
        const double ly = ymin + k * (ymax - ymin) / 4;
        char lab[64];
        std::snprintf(lab, sizeof lab, "%.3g", std::pow(10.0, lx));
        out << "<text x='" << X(lx) << "' y='" << H - MB + 18
            << "' font-size='11' text-anchor='middle'>" << lab << "</text>\n";
        std::snprintf(lab, sizeof lab, "%.3g", std::pow(10.0, ly));
        out << "<text x='" << ML - 6 << "' y='" << Y(ly) + 4
            << "' font-size='11' text-anchor='end'>" << lab << "</text>\n";
    }
    out << "<text x='" << (ML + W - MR) / 2 << "' y='" << H - 12
        << "' font-size='13' text-anchor='middle'>T</text>\n";
    int ci = 0, legend_y = MT + 12;
    for (const auto& s : series) {
        if (s.T.empty()) continue;
        const char* col = colors[ci++ % 8];
        for (size_t k = 0; k < s.T.size(); ++k) {
            if (!(s.value[k] > 0.0)) continue;
            out << "<circle cx='" << X(std::log10(s.T[k])) << "' cy='"
                << Y(std::log10(s.value[k])) << "' r='3' fill='" << col << "'/>\n";
        }
        if (s.fitted) {
            const double lx0 = std::log10(s.T.front()), lx1 = std::log10(s.T.back());
            // fit is in natural logs: log10(v) = (intercept + exp*ln T)/ln 10
            auto ly = [&](double lx) {
                return (s.fit.intercept + s.fit.exponent * lx * std::log(10.0)) / std::log(10.0);
            };
            out << "<line x1='" << X(lx0) << "' y1='" << Y(ly(lx0)) << "' x2='" << X(lx1)
                << "' y2='" << Y(ly(lx1)) << "' stroke='" << col
                << "' stroke-dasharray='4,3'/>\n";
        }
        out << "<text x='" << W - MR - 4 << "' y='" << legend_y << "' font-size='11' fill='"
            << col << "' text-anchor='end'>" << s.quantity << " (" << s.region << ")";
        if (s.fitted) {
            char lab[64];
            std::snprintf(lab, sizeof lab, " slope %.2f", s.fit.exponent);
            out << lab;
        }
        out << "</text>\n";
        legend_y += 14;
    }
    out << "</svg>\n";
}

}  // namespace hyperfoil
