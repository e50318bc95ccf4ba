#include "orbitherm/model.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <string>
#include <vector>

#include <json.hpp>

#include "csv.hpp"

namespace orbitherm {

using nlohmann::json;

namespace {

std::string pair_str(int i, int j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void check_coupling_matrix(const Matrix& m, int n, const std::string& name) {
    if (m.rows() != n || m.cols() != n)
        throw ValidationError(name + " matrix must be " + std::to_string(n) + "x" +
                              std::to_string(n));
    for (int i = 0; i < n; ++i) {
        if (m(i, i) != 0.0)
            throw ValidationError(name + " diagonal must be zero at " + pair_str(i, i));
        for (int j = 0; j < n; ++j) {
            if (!std::isfinite(m(i, j)) || m(i, j) < 0.0)
                throw ValidationError(name + " coupling " + pair_str(i, j) +
                                      " must be finite and >= 0");
            if (j > i && m(i, j) != m(j, i))
                throw ValidationError(name + " coupling " + pair_str(i, j) +
                                      " is not symmetric");
        }
    }
}

}  // namespace

void validate(const ThermalModel& model) {
    const int n = model.node_count();
    if (n < 1) throw ValidationError("model must have at least one node");
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(model.capacitance[i]) || model.capacitance[i] <= 0.0)
            throw ValidationError("capacitance of node " + std::to_string(i + 1) +
                                  " must be > 0");
    check_coupling_matrix(model.conduction, n, "conduction");
    check_coupling_matrix(model.radiation, n, "radiation");
    if (model.env_radiation.size() != n)
        throw ValidationError("env_radiation must have one entry per node");
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(model.env_radiation[i]) || model.env_radiation[i] < 0.0)
            throw ValidationError("env_radiation of node " + std::to_string(i + 1) +
                                  " must be >= 0");
    if (!std::isfinite(model.env_temperature) || model.env_temperature < 0.0)
        throw ValidationError("env_temperature must be >= 0");
    if (!model.node_labels.empty() && static_cast<int>(model.node_labels.size()) != n)
        throw ValidationError("node_labels must be empty or one per node");
    if (model.mean_inputs.size() != 0 && model.mean_inputs.size() != n)
        throw ValidationError("mean_inputs must be empty or one per node");

    // Connectivity of the coupling graph with the environment as node n;
    // without a path to the environment a steady state need not exist.
    std::vector<char> seen(n + 1, 0);
    std::queue<int> queue;
    queue.push(n);
    seen[n] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop();
        for (int v = 0; v < n; ++v) {
            if (seen[v]) continue;
            bool linked = u == n ? model.env_radiation[v] > 0.0
                                 : model.conduction(u, v) > 0.0 || model.radiation(u, v) > 0.0;
            if (linked) {
                seen[v] = 1;
                queue.push(v);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i])
            throw ValidationError("node " + std::to_string(i + 1) +
                                  " is not connected to the environment through the coupling graph");
}

namespace {

void fill_couplings(const json& list, Matrix& m, int n, const std::string& name) {
    if (!list.is_array()) throw ParseError(name + " must be an array");
    for (const auto& entry : list) {
        int i = entry.at("i").get<int>();
        int j = entry.at("j").get<int>();
        double value = entry.at("value").get<double>();
        if (i < 1 || i > n || j < 1 || j > n)
            throw ValidationError(name + " coupling " + pair_str(i - 1, j - 1) +
                                  " has an out-of-range node index");
        if (i == j)
            throw ValidationError(name + " coupling " + pair_str(i - 1, j - 1) +
                                  " links a node to itself");
        if (m(i - 1, j - 1) != 0.0)
            throw ValidationError(name + " coupling " + pair_str(i - 1, j - 1) +
                                  " is listed more than once");
        m(i - 1, j - 1) = value;
        m(j - 1, i - 1) = value;
    }
}

}  // namespace

ThermalModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }

    ThermalModel model;
    try {
        const auto& nodes = doc.at("nodes");
        const int n = static_cast<int>(nodes.size());
        model.capacitance.resize(n);
        model.env_radiation.resize(n);
        model.node_labels.reserve(n);
        for (int i = 0; i < n; ++i) {
            const auto& node = nodes.at(i);
            model.capacitance[i] = node.at("capacitance").get<double>();
            model.env_radiation[i] = node.value("env_radiation", 0.0);
            model.node_labels.push_back(node.value("label", "node_" + std::to_string(i + 1)));
        }
        model.conduction = Matrix::Zero(n, n);
        model.radiation = Matrix::Zero(n, n);
        fill_couplings(doc.value("conduction", json::array()), model.conduction, n, "conduction");
        fill_couplings(doc.value("radiation", json::array()), model.radiation, n, "radiation");
        model.env_temperature = doc.value("env_temperature", 2.73);
        if (doc.contains("mean_inputs")) {
            const auto& means = doc.at("mean_inputs");
            model.mean_inputs.resize(means.size());
            for (size_t i = 0; i < means.size(); ++i)
                model.mean_inputs[static_cast<int>(i)] = means.at(i).get<double>();
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }

    validate(model);
    return model;
}

void save_model(const ThermalModel& model, const std::filesystem::path& path) {
    const int n = model.node_count();
    json doc;
    doc["nodes"] = json::array();
    for (int i = 0; i < n; ++i) {
        json node;
        node["label"] = model.node_labels.empty() ? "node_" + std::to_string(i + 1)
                                                  : model.node_labels[i];
        node["capacitance"] = model.capacitance[i];
        node["env_radiation"] = model.env_radiation[i];
        doc["nodes"].push_back(node);
    }
    doc["env_temperature"] = model.env_temperature;
    auto couplings = [n](const Matrix& m) {
        json list = json::array();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (m(i, j) != 0.0) list.push_back({{"i", i + 1}, {"j", j + 1}, {"value", m(i, j)}});
        return list;
    };
    doc["conduction"] = couplings(model.conduction);
    doc["radiation"] = couplings(model.radiation);
    if (model.mean_inputs.size() > 0) {
        json means = json::array();
        for (int i = 0; i < model.mean_inputs.size(); ++i) means.push_back(model.mean_inputs[i]);
        doc["mean_inputs"] = means;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

HeatProfile make_profile(const ThermalModel& model, double period, const Matrix& samples) {
    const int n = static_cast<int>(samples.rows());
    if (n < 2) throw ValidationError("profile needs at least 2 samples");
    if (!(period > 0.0)) throw ValidationError("profile period must be > 0");
    if (samples.cols() != model.node_count())
        throw ValidationError("profile has " + std::to_string(samples.cols()) +
                              " heat columns for a " + std::to_string(model.node_count()) +
                              "-node model");
    if (!samples.allFinite()) throw ValidationError("profile samples must be finite");

    HeatProfile profile;
    profile.period = period;
    profile.samples = samples;
    profile.means = samples.colwise().mean();
    profile.driving = (samples.rowwise() - profile.means.transpose()).array().rowwise() /
                      model.capacitance.transpose().array();

    for (int j = 0; j < profile.driving.cols(); ++j) {
        double scale = profile.driving.col(j).cwiseAbs().maxCoeff();
        double mean = profile.driving.col(j).mean();
        if (std::abs(mean) > 1e-12 * std::max(scale, 1e-300))
            throw NumericsError("driving column " + std::to_string(j + 1) +
                                " failed the zero-mean check");
    }
    return profile;
}

HeatProfile load_profile(const std::filesystem::path& path, const ThermalModel& model) {
    csv::Table table = csv::read_table(path);
    const int n = static_cast<int>(table.rows.size());
    const int cols = model.node_count() + 1;
    if (n < 2) throw ParseError(path.string() + ": profile needs at least 2 rows");
    for (int k = 0; k < n; ++k)
        if (static_cast<int>(table.rows[k].size()) != cols)
            throw ParseError(path.string() + ": row " + std::to_string(k + 1) + " has " +
                             std::to_string(table.rows[k].size()) + " columns, expected " +
                             std::to_string(cols));

    Vector times(n);
    Matrix samples(n, model.node_count());
    for (int k = 0; k < n; ++k) {
        times[k] = table.rows[k][0];
        for (int i = 0; i < model.node_count(); ++i) samples(k, i) = table.rows[k][i + 1];
    }

    const double dt = (times[n - 1] - times[0]) / (n - 1);
    if (!(dt > 0.0)) throw ParseError(path.string() + ": times must be strictly ascending");
    if (std::abs(times[0]) > 1e-6 * dt)
        throw ParseError(path.string() + ": time column must start at 0");
    for (int k = 1; k < n; ++k) {
        double step = times[k] - times[k - 1];
        if (std::abs(step - dt) > 1e-6 * dt)
            throw ParseError(path.string() + ": non-uniform time spacing at row " +
                             std::to_string(k + 1) + " (step " + std::to_string(step) +
                             " vs " + std::to_string(dt) + ")");
    }

    double period = table.period_override.value_or(dt * n);
    if (std::abs(period - dt * n) > 1e-6 * period)
        throw ParseError(path.string() + ": period comment " + std::to_string(period) +
                         " is inconsistent with the sample spacing (n*dt = " +
                         std::to_string(dt * n) + ")");
    return make_profile(model, period, samples);
}

void save_profile(const HeatProfile& profile, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    const int n = profile.sample_count();
    const int cols = static_cast<int>(profile.samples.cols());
    out << "# period = " << csv::format_double(profile.period) << "\n";
    out << "time_s";
    for (int i = 0; i < cols; ++i) out << ",q" << i + 1 << "_W";
    out << "\n";
    for (int k = 0; k < n; ++k) {
        std::vector<double> row;
        row.reserve(cols + 1);
        row.push_back(k * profile.period / n);
        for (int i = 0; i < cols; ++i) row.push_back(profile.samples(k, i));
        out << csv::join_row(row) << "\n";
    }
}

Vector total_load(const HeatProfile& profile) { return profile.samples.rowwise().sum(); }

}  // namespace orbitherm
