#include "qct/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "qct/config.hpp"
#include "qct/error.hpp"

namespace qct {

namespace {

using nlohmann::ordered_json;

// Round to 12 significant digits so rendered values do not depend on
// sub-rounding noise. The rounded double then prints via the shortest
// round-trip representation.
double round_sig(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string csv_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

ordered_json key_summary_json(const KeySummary& s) {
    ordered_json out;
    out["protocol"] = to_string(s.protocol);
    out["attempts"] = s.attempts;
    out["compromised"] = s.compromised;
    if (s.protocol == Protocol::Ekert91) {
        out["pairs"] = s.pairs;
        out["sifted_len"] = s.sifted_len;
        out["agreement"] = round_sig(s.agreement);
        out["chsh_s"] = round_sig(s.chsh_s);
    } else {
        out["batch"] = s.batch;
        out["qber_forward"] = round_sig(s.qber_forward);
        out["qber_backward"] = round_sig(s.qber_backward);
    }
    return out;
}

ordered_json trial_json(const TrialReport& trial) {
    ordered_json out;
    out["trial"] = trial.trial_index;
    out["mean_fidelity"] = round_sig(trial.mean_fidelity);
    out["min_fidelity"] = round_sig(trial.min_fidelity);
    ordered_json fids = ordered_json::array();
    for (double f : trial.fidelities) fids.push_back(round_sig(f));
    out["fidelities"] = fids;
    out["true_codes"] = to_string(trial.true_codes);
    out["announced_codes"] = to_string(trial.announced_codes);
    out["decoded_codes"] = to_string(trial.decoded_codes);
    out["revealed_shift"] = trial.uniform_revealed_shift();
    out["residual_shift"] = trial.uniform_residual_shift();
    ordered_json keys = ordered_json::object();
    for (const auto& [id, bits] : trial.agent_key_bits) {
        std::string rendered;
        for (auto b : bits) rendered += b ? '1' : '0';
        keys[id] = rendered;
    }
    out["agent_key_bits"] = keys;
    ordered_json summaries = ordered_json::object();
    for (const auto& [id, summary] : trial.key_summaries)
        summaries[id] = key_summary_json(summary);
    out["key_establishment"] = summaries;
    out["key_retries"] = trial.key_retries;
    return out;
}

double trial_chsh_min_abs(const TrialReport& trial, bool& present) {
    double best = 1e300;
    present = false;
    for (const auto& [id, summary] : trial.key_summaries) {
        if (summary.protocol != Protocol::Ekert91) continue;
        present = true;
        best = std::min(best, std::abs(summary.chsh_s));
    }
    return present ? best : 0.0;
}

double trial_qber_max(const TrialReport& trial, bool& present) {
    double worst = 0.0;
    present = false;
    for (const auto& [id, summary] : trial.key_summaries) {
        if (summary.protocol != Protocol::Qsdc) continue;
        present = true;
        worst = std::max(worst, std::max(summary.qber_forward, summary.qber_backward));
    }
    return worst;
}

std::string render_json(const ScenarioConfig& config, const AggregateReport& report,
                        bool include_per_trial) {
    ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["scenario"] = ordered_json::parse(scenario_to_json(config));

    ordered_json agg;
    agg["trials"] = report.trials;
    agg["qubits"] = report.qubits;
    agg["mean_fidelity"] = round_sig(report.mean_fidelity);
    agg["stddev_fidelity"] = round_sig(report.stddev_fidelity);
    agg["min_fidelity"] = round_sig(report.min_fidelity);
    agg["trials_with_residual"] = report.trials_with_residual;
    agg["key_retries"] = report.key_retries;
    if (report.has_chsh) agg["chsh_min_abs"] = round_sig(report.chsh_min_abs);
    if (report.has_qber) agg["qber_max"] = round_sig(report.qber_max);
    doc["aggregate"] = agg;

    if (include_per_trial) {
        ordered_json trials = ordered_json::array();
        for (const auto& trial : report.per_trial) trials.push_back(trial_json(trial));
        doc["trials"] = trials;
    }
    return doc.dump(2) + "\n";
}

std::string render_csv(const AggregateReport& report) {
    std::ostringstream out;
    out << "trial,mean_fidelity,residual_shift,chsh_min,qber_max,compromised_count\n";
    for (const auto& trial : report.per_trial) {
        bool has_chsh = false, has_qber = false;
        const double chsh = trial_chsh_min_abs(trial, has_chsh);
        const double qber = trial_qber_max(trial, has_qber);
        out << trial.trial_index << ',' << csv_number(round_sig(trial.mean_fidelity))
            << ',' << trial.uniform_residual_shift() << ',';
        if (has_chsh) out << csv_number(round_sig(chsh));
        out << ',';
        if (has_qber) out << csv_number(round_sig(qber));
        out << ',' << trial.key_retries << '\n';
    }
    return out.str();
}

std::string render_text(const ScenarioConfig& config, const AggregateReport& report,
                        bool include_per_trial) {
    std::ostringstream out;
    out << "scenario: m=" << config.m << " agents=" << config.agents.size()
        << " collaborators=" << config.collaborators.size()
        << " trials=" << report.trials << " seed=" << config.master_seed << "\n";
    out << "qubits teleported: " << report.qubits << "\n";
    out << "mean fidelity:     " << csv_number(round_sig(report.mean_fidelity)) << "\n";
    out << "stddev fidelity:   " << csv_number(round_sig(report.stddev_fidelity)) << "\n";
    out << "min fidelity:      " << csv_number(round_sig(report.min_fidelity)) << "\n";
    out << "residual trials:   " << report.trials_with_residual << " of "
        << report.trials << "\n";
    out << "key retries:       " << report.key_retries << "\n";
    if (report.has_chsh)
        out << "min |S| observed:  " << csv_number(round_sig(report.chsh_min_abs)) << "\n";
    if (report.has_qber)
        out << "max QBER observed: " << csv_number(round_sig(report.qber_max)) << "\n";
    if (include_per_trial) {
        for (const auto& trial : report.per_trial) {
            out << "  trial " << trial.trial_index << ": mean_fidelity="
                << csv_number(round_sig(trial.mean_fidelity))
                << " residual_shift=" << trial.uniform_residual_shift()
                << " codes=" << to_string(trial.true_codes) << " -> "
                << to_string(trial.announced_codes) << "\n";
        }
    }
    return out.str();
}

} // namespace

ReportFormat report_format_from(const std::string& name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "text") return ReportFormat::Text;
    fail(errc::validation_error, "unknown report format '" + name + "'");
}

std::string render_report(const ScenarioConfig& config, const AggregateReport& report,
                          ReportFormat format, bool include_per_trial) {
    switch (format) {
        case ReportFormat::Json: return render_json(config, report, include_per_trial);
        case ReportFormat::Csv: return render_csv(report);
        case ReportFormat::Text: return render_text(config, report, include_per_trial);
    }
    fail(errc::validation_error, "unhandled report format");
}

} // namespace qct
