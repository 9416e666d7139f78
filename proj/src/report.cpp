#include "v2n/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "v2n/format.hpp"

namespace v2n {

void write_summary_csv(std::ostream& out, std::span<const SweepRow> rows)
{
    out << "tech,lambda_mmw,N,M,T_tr_s,mean_rate_bps,rho_var,outage_prob,ci_rate,ci_outage,n_drops\n";
    for (const auto& r : rows) {
        const auto& s = r.summary;
        out << to_string(r.tech) << ',' << format_double(r.lambda_mmw) << ',' << r.arrays.vehicle << ','
            << r.arrays.rsu << ',' << format_double(r.t_tr_s) << ',' << format_double(s.mean_rate_bps) << ','
            << format_double(s.rho_var) << ',' << format_double(s.outage_prob) << ',' << format_double(s.ci_rate)
            << ',' << format_double(s.ci_outage) << ',' << s.n_drops << '\n';
    }
}

std::vector<SweepRow> campaign_rows(const SimConfig& config, const CampaignResult& result)
{
    SweepRow lte;
    lte.tech = Tech::Lte;
    lte.summary = result.lte;
    SweepRow mmw;
    mmw.tech = Tech::MmWave;
    mmw.lambda_mmw = config.lambda_mmw;
    mmw.arrays = config.arrays;
    mmw.t_tr_s = config.t_tr_s;
    mmw.summary = result.mmw;
    mmw.loss_events = result.loss_events;
    mmw.slots = result.slots;
    mmw.slots_with_loss = result.slots_with_loss;
    return {lte, mmw};
}

void write_timeseries_csv(std::ostream& out, const DropResult& drop)
{
    out << "t_s,tech,serving_rsu,snr_db,rate_bps,lost_alignment\n";
    auto serving = [](int id) { return id < 0 ? std::string("NA") : std::to_string(id); };
    for (std::size_t k = 0; k < drop.t.size(); ++k) {
        const std::string t = format_double(drop.t[k]);
        out << t << ",LTE," << serving(drop.lte_serving[k]) << ',' << format_double(drop.lte.snr_db[k]) << ','
            << format_double(drop.lte.rate_bps[k]) << ",0\n";
        out << t << ",mmWave," << serving(drop.mmw_serving[k]) << ',' << format_double(drop.mmw.snr_db[k]) << ','
            << format_double(drop.mmw.rate_bps[k]) << ',' << int(drop.mmw_lost[k]) << '\n';
    }
}

// ------------------------------------------------------------------ SVG

namespace {

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target)
{
    if (!(hi > lo)) {
        return {lo};
    }
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) {
            break;
        }
    }
    std::vector<double> ticks;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
        ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return ticks;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff00ff", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

} // namespace

void write_svg(std::ostream& out, const LinePlot& plot)
{
    constexpr double W = 720, H = 440, L = 80, R = 190, T = 40, B = 60;
    const double pw = W - L - R;
    const double ph = H - T - B;

    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : plot.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || (plot.log_y && s.y[i] <= 0.0)) {
                continue;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0, xmax = 1, ymin = plot.log_y ? 0.1 : 0, ymax = 1;
    }
    if (xmax == xmin) {
        xmax = xmin + 1;
    }
    if (plot.log_y) {
        ymin = std::pow(10.0, std::floor(std::log10(ymin)));
        ymax = std::pow(10.0, std::ceil(std::log10(ymax)));
        if (ymax == ymin) {
            ymax = ymin * 10;
        }
    } else {
        ymin = std::min(ymin, 0.0);
        ymax = ymax > ymin ? ymax * 1.05 : ymin + 1;
    }
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) {
        if (plot.log_y) {
            return T + ph - (std::log10(y) - std::log10(ymin)) / (std::log10(ymax) - std::log10(ymin)) * ph;
        }
        return T + ph - (y - ymin) / (ymax - ymin) * ph;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << L + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(plot.title)
        << "</text>\n";

    // grid and ticks
    for (double x : nice_ticks(xmin, xmax, 8)) {
        out << "<line x1=\"" << format_fixed(px(x), 2) << "\" y1=\"" << T << "\" x2=\"" << format_fixed(px(x), 2)
            << "\" y2=\"" << T + ph << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << format_fixed(px(x), 2) << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">"
            << format_double(x) << "</text>\n";
    }
    std::vector<double> yt;
    if (plot.log_y) {
        for (double v = ymin; v <= ymax * 1.0001; v *= 10) {
            yt.push_back(v);
        }
    } else {
        yt = nice_ticks(ymin, ymax, 6);
    }
    for (double y : yt) {
        out << "<line x1=\"" << L << "\" y1=\"" << format_fixed(py(y), 2) << "\" x2=\"" << L + pw << "\" y2=\""
            << format_fixed(py(y), 2) << "\" stroke=\"#ddd\"/>\n";
        std::ostringstream label;
        label << y;
        out << "<text x=\"" << L - 6 << "\" y=\"" << format_fixed(py(y) + 4, 2) << "\" text-anchor=\"end\">"
            << label.str() << "</text>\n";
    }
    out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
        << xml_escape(plot.x_label) << "</text>\n";
    out << "<text transform=\"translate(20," << T + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << xml_escape(plot.y_label) << "</text>\n";

    for (std::size_t si = 0; si < plot.series.size(); ++si) {
        const auto& s = plot.series[si];
        const char* color = kPalette[si % std::size(kPalette)];
        std::string points;
        std::vector<std::pair<double, double>> marks;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || (plot.log_y && s.y[i] <= 0.0)) {
                continue;
            }
            const double X = px(s.x[i]);
            const double Y = py(std::clamp(s.y[i], ymin, ymax));
            points += format_fixed(X, 2) + "," + format_fixed(Y, 2) + " ";
            marks.emplace_back(X, Y);
        }
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
            << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << points << "\"/>\n";
        if (s.markers) {
            for (const auto& [X, Y] : marks) {
                out << "<circle cx=\"" << format_fixed(X, 2) << "\" cy=\"" << format_fixed(Y, 2)
                    << "\" r=\"3\" fill=\"white\" stroke=\"" << color << "\"/>\n";
            }
        }
        const double ly = T + 10 + 20.0 * static_cast<double>(si);
        out << "<line x1=\"" << L + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 36 << "\" y2=\"" << ly
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "")
            << "/>\n";
        out << "<text x=\"" << L + pw + 42 << "\" y=\"" << ly + 4 << "\">" << xml_escape(s.name) << "</text>\n";
    }
    out << "</svg>\n";
}

// ------------------------------------------------------------- manifest

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        f << content;
        if (!f) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m)
{
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["config_hash"] = m.config_hash;
    j["root_seed"] = m.root_seed;
    j["version"] = m.version;
    j["outputs"] = m.outputs;
    j["wall_clock_s"] = m.wall_clock_s;
    write_file_atomic(path, j.dump(2) + "\n");
}

} // namespace v2n
