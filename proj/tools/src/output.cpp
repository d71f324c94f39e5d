#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wflow::cli {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void emit(const nlohmann::json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<size_t>(indent) * depth, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad;
                out += nlohmann::json(it.key()).dump();
                out += ": ";
                emit(it.value(), out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += close_pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                out += pad;
                emit(j[i], out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += close_pad + "]";
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? format_double(x) : "null";
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
    std::string out;
    emit(j, out, indent, 0);
    out += "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << content;
    if (!f) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("read failed: " + path);
    return ss.str();
}

namespace {

struct Row {
    double t, tau, phi, speed;
    CurvatureProfile curvatures;
};

std::vector<Row> resample(const FlowTrajectory& traj, const IsoparametricFamily& family,
                          const WeingartenSpec& spec, int samples) {
    if (samples < 2) samples = 2;
    const double t_end = traj.samples.back().t;
    std::vector<Row> rows;
    rows.reserve(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        Row r;
        r.t = t_end * i / (samples - 1);
        r.phi = phi_of_t(traj, r.t);
        r.tau = traj.tau0 + traj.drift * r.phi;
        r.curvatures = family.principal_curvatures(r.tau);
        r.speed = eval(spec, r.curvatures);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string terminal_comment(const CollapseResult& terminal) {
    std::string line = "# terminal verdict=" + verdict_name(terminal.verdict);
    if (terminal.verdict == Verdict::Collapsed) {
        line += " T=" + format_double(terminal.time);
        line += " end=" + terminal.end;
    } else if (terminal.verdict == Verdict::NonCollapsing) {
        line += " reason=" + reason_name(terminal.reason);
        line += " t_end=" + format_double(terminal.time);
    } else {
        line += " t_max=" + format_double(terminal.time);
    }
    line += " error_estimate=" + format_double(terminal.error_estimate);
    return line;
}

}  // namespace

std::string trajectory_csv(const FlowTrajectory& trajectory,
                           const IsoparametricFamily& family,
                           const WeingartenSpec& spec, int samples) {
    std::string out = "t,tau,phi,speed";
    const CurvatureProfile head = family.principal_curvatures(trajectory.samples.front().tau);
    for (size_t i = 0; i < head.blocks().size(); ++i)
        out += ",k" + std::to_string(i + 1) + "_m" +
               std::to_string(head.blocks()[i].multiplicity);
    out += "\n";

    for (const Row& r : resample(trajectory, family, spec, samples)) {
        out += format_double(r.t) + "," + format_double(r.tau) + "," +
               format_double(r.phi) + "," + format_double(r.speed);
        for (const auto& b : r.curvatures.blocks()) out += "," + format_double(b.value);
        out += "\n";
    }
    out += terminal_comment(trajectory.terminal) + "\n";
    return out;
}

nlohmann::json trajectory_json_samples(const FlowTrajectory& trajectory,
                                       const IsoparametricFamily& family,
                                       const WeingartenSpec& spec, int samples) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Row& r : resample(trajectory, family, spec, samples)) {
        nlohmann::json row;
        row["t"] = r.t;
        row["tau"] = r.tau;
        row["phi"] = r.phi;
        row["speed"] = r.speed;
        nlohmann::json blocks = nlohmann::json::array();
        for (const auto& b : r.curvatures.blocks())
            blocks.push_back({{"value", b.value}, {"multiplicity", b.multiplicity}});
        row["curvatures"] = blocks;
        arr.push_back(std::move(row));
    }
    return arr;
}

nlohmann::json terminal_json(const CollapseResult& terminal) {
    nlohmann::json j;
    j["verdict"] = verdict_name(terminal.verdict);
    if (terminal.verdict == Verdict::Collapsed) {
        j["T"] = terminal.time;
        j["end"] = terminal.end;
    } else {
        j["T"] = nullptr;
        j["end"] = terminal.verdict == Verdict::NonCollapsing
                       ? nlohmann::json(reason_name(terminal.reason))
                       : nlohmann::json(nullptr);
    }
    j["t_end"] = terminal.time;
    j["error_estimate"] = terminal.error_estimate;
    j["speed_monotone"] = terminal.speed_monotone;
    return j;
}

}  // namespace wflow::cli
