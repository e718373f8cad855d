#include "zecap/io.hpp"

#include <algorithm>
#include <fstream>

#include "zecap/errors.hpp"

namespace zecap {

namespace {

Json complex_to_json(const std::complex<double>& z) {
    return Json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const Json& j,
                                       const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number())
        throw ParseError(where + ": expected a complex entry [re, im], got " +
                         j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const MatrixXcd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

MatrixXcd matrix_from_json(const Json& j, int rows, int cols,
                           const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw ParseError(where + ": expected " + std::to_string(rows) +
                         " rows");
    MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError(where + "[" + std::to_string(r) + "]: expected " +
                             std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(
                row[c],
                where + "[" + std::to_string(r) + "][" + std::to_string(c) +
                    "]");
    }
    return m;
}

Json vector_to_json(const VectorXcd& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(complex_to_json(v(i)));
    return out;
}

VectorXcd vector_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    VectorXcd v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) =
            complex_from_json(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(where + ": missing field '" + key + "'");
    return j.at(key);
}

CapacityStatus capacity_status_from_string(const std::string& s) {
    if (s == "Positive") return CapacityStatus::Positive;
    if (s == "Zero") return CapacityStatus::Zero;
    if (s == "Unknown") return CapacityStatus::Unknown;
    throw ParseError("unknown capacity status '" + s + "'");
}

VerdictMethod verdict_method_from_string(const std::string& s) {
    if (s == "SubspaceCriterion") return VerdictMethod::SubspaceCriterion;
    if (s == "DirectMinimization") return VerdictMethod::DirectMinimization;
    if (s == "Both") return VerdictMethod::Both;
    throw ParseError("unknown verdict method '" + s + "'");
}

SuperactivationConclusion conclusion_from_string(const std::string& s) {
    if (s == "Superactivated") return SuperactivationConclusion::Superactivated;
    if (s == "NotSuperactivated")
        return SuperactivationConclusion::NotSuperactivated;
    if (s == "NotApplicable") return SuperactivationConclusion::NotApplicable;
    if (s == "TheoremFastPath")
        return SuperactivationConclusion::TheoremFastPath;
    throw ParseError("unknown conclusion '" + s + "'");
}

bool vectors_equal(const VectorXcd& a, const VectorXcd& b) {
    return a.size() == b.size() &&
           std::equal(a.data(), a.data() + a.size(), b.data());
}

}  // namespace

Json channel_file_to_json(const ChannelFile& file) {
    Json j;
    j["name"] = file.name;
    j["d_in"] = file.d_in;
    j["d_out"] = file.d_out;
    Json kraus = Json::array();
    for (const MatrixXcd& k : file.kraus) kraus.push_back(matrix_to_json(k));
    j["kraus"] = std::move(kraus);
    return j;
}

ChannelFile channel_file_from_json(const Json& j) {
    ChannelFile file;
    file.name = require(j, "name", "channel file").get<std::string>();
    file.d_in = require(j, "d_in", "channel file").get<int>();
    file.d_out = require(j, "d_out", "channel file").get<int>();
    if (file.d_in < 1 || file.d_out < 1)
        throw ParseError("channel file: dimensions must be positive");
    const Json& kraus = require(j, "kraus", "channel file");
    if (!kraus.is_array() || kraus.empty())
        throw ParseError("channel file: 'kraus' must be a non-empty array");
    for (size_t k = 0; k < kraus.size(); ++k)
        file.kraus.push_back(matrix_from_json(
            kraus[k], file.d_out, file.d_in,
            "kraus[" + std::to_string(k) + "]"));
    return file;
}

ChannelFile read_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
    return channel_file_from_json(j);
}

void write_channel_file(const std::string& path, const ChannelFile& file) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << channel_file_to_json(file).dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

Channel to_channel(const ChannelFile& file) {
    const Channel ch = validate_channel(file.kraus);
    if (ch.d_in != file.d_in || ch.d_out != file.d_out)
        throw ParseError("channel file declares " + std::to_string(file.d_out) +
                         "x" + std::to_string(file.d_in) +
                         " but the Kraus matrices are " +
                         std::to_string(ch.d_out) + "x" +
                         std::to_string(ch.d_in));
    return ch;
}

ChannelFile from_channel(const Channel& ch, std::string name) {
    return ChannelFile{std::move(name), ch.d_in, ch.d_out, ch.kraus};
}

Json to_json(const PureState& s) {
    Json j;
    j["amplitudes"] = vector_to_json(s.amplitudes);
    j["dims"] = s.dims;
    return j;
}

PureState pure_state_from_json(const Json& j) {
    PureState s;
    s.amplitudes = vector_from_json(require(j, "amplitudes", "state"),
                                    "state amplitudes");
    s.dims = require(j, "dims", "state").get<std::vector<int>>();
    return s;
}

Json to_json(const CapacityVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["margin"] = v.margin;
    j["method"] = to_string(v.method);
    j["agreement"] = v.agreement;
    j["dim_support"] = v.dim_support;
    j["dim_complement"] = v.dim_complement;
    if (v.subspace_status)
        j["subspace_status"] = to_string(*v.subspace_status);
    if (v.minimization_status)
        j["minimization_status"] = to_string(*v.minimization_status);
    if (v.witness) {
        j["witness"] = Json{{"psi", to_json(v.witness->first)},
                            {"phi", to_json(v.witness->second)}};
    }
    j["warnings"] = v.warnings;
    return j;
}

CapacityVerdict capacity_verdict_from_json(const Json& j) {
    CapacityVerdict v;
    v.status = capacity_status_from_string(
        require(j, "status", "verdict").get<std::string>());
    v.margin = require(j, "margin", "verdict").get<double>();
    v.method = verdict_method_from_string(
        require(j, "method", "verdict").get<std::string>());
    v.agreement = require(j, "agreement", "verdict").get<bool>();
    v.dim_support = require(j, "dim_support", "verdict").get<int>();
    v.dim_complement = require(j, "dim_complement", "verdict").get<int>();
    if (j.contains("subspace_status"))
        v.subspace_status = capacity_status_from_string(
            j.at("subspace_status").get<std::string>());
    if (j.contains("minimization_status"))
        v.minimization_status = capacity_status_from_string(
            j.at("minimization_status").get<std::string>());
    if (j.contains("witness")) {
        const Json& w = j.at("witness");
        v.witness = std::make_pair(
            pure_state_from_json(require(w, "psi", "witness")),
            pure_state_from_json(require(w, "phi", "witness")));
    }
    v.warnings = require(j, "warnings", "verdict")
                     .get<std::vector<std::string>>();
    return v;
}

Json to_json(const SuperactivationReport& r) {
    Json j;
    Json individual = Json::array();
    for (const CapacityVerdict& v : r.individual)
        individual.push_back(to_json(v));
    j["individual"] = std::move(individual);
    j["conclusion"] = to_string(r.conclusion);
    if (r.joint) j["joint"] = to_json(*r.joint);
    if (r.fast_path_reason) j["fast_path_reason"] = *r.fast_path_reason;
    j["complement_dims"] = r.complement_dims;
    j["joint_input_dim"] = r.joint_input_dim;
    j["warnings"] = r.warnings;
    return j;
}

SuperactivationReport superactivation_report_from_json(const Json& j) {
    SuperactivationReport r;
    for (const Json& v : require(j, "individual", "report"))
        r.individual.push_back(capacity_verdict_from_json(v));
    r.conclusion = conclusion_from_string(
        require(j, "conclusion", "report").get<std::string>());
    if (j.contains("joint"))
        r.joint = capacity_verdict_from_json(j.at("joint"));
    if (j.contains("fast_path_reason"))
        r.fast_path_reason = j.at("fast_path_reason").get<std::string>();
    r.complement_dims =
        require(j, "complement_dims", "report").get<std::vector<int>>();
    r.joint_input_dim = require(j, "joint_input_dim", "report").get<int>();
    r.warnings = require(j, "warnings", "report")
                     .get<std::vector<std::string>>();
    return r;
}

Json to_json(const AnalysisOptions& a) {
    Json j;
    j["support_tol"] = a.support_tol;
    j["zero_tol"] = a.zero_tol;
    j["use_subspace"] = a.use_subspace;
    j["use_minimization"] = a.use_minimization;
    j["search"] = Json{{"restarts", a.search.restarts},
                       {"max_iter", a.search.max_iter},
                       {"found_tol", a.search.found_tol},
                       {"conv_tol", a.search.conv_tol},
                       {"seed", a.search.seed}};
    j["minimize"] = Json{{"restarts", a.minimize.restarts},
                         {"max_iter", a.minimize.max_iter},
                         {"conv_tol", a.minimize.conv_tol},
                         {"seed", a.minimize.seed}};
    return j;
}

AnalysisOptions analysis_options_from_json(const Json& j) {
    AnalysisOptions a;
    a.support_tol = require(j, "support_tol", "analysis").get<double>();
    a.zero_tol = require(j, "zero_tol", "analysis").get<double>();
    a.use_subspace = require(j, "use_subspace", "analysis").get<bool>();
    a.use_minimization =
        require(j, "use_minimization", "analysis").get<bool>();
    const Json& s = require(j, "search", "analysis");
    a.search.restarts = require(s, "restarts", "search").get<int>();
    a.search.max_iter = require(s, "max_iter", "search").get<int>();
    a.search.found_tol = require(s, "found_tol", "search").get<double>();
    a.search.conv_tol = require(s, "conv_tol", "search").get<double>();
    a.search.seed = require(s, "seed", "search").get<std::uint64_t>();
    const Json& m = require(j, "minimize", "analysis");
    a.minimize.restarts = require(m, "restarts", "minimize").get<int>();
    a.minimize.max_iter = require(m, "max_iter", "minimize").get<int>();
    a.minimize.conv_tol = require(m, "conv_tol", "minimize").get<double>();
    a.minimize.seed = require(m, "seed", "minimize").get<std::uint64_t>();
    return a;
}

Json to_json(const CampaignConfig& c) {
    Json j;
    j["mode"] = to_string(c.mode);
    j["trials"] = c.trials;
    j["dims"] = c.dims;
    j["env_dim"] = c.env_dim;
    j["seed"] = c.seed;
    j["margin_filter"] = c.margin_filter;
    j["group_size"] = c.group_size;
    j["fast_path"] = c.fast_path;
    j["ambient_cap"] = c.ambient_cap;
    j["analysis"] = to_json(c.analysis);
    return j;
}

CampaignConfig campaign_config_from_json(const Json& j) {
    CampaignConfig c;
    c.mode = campaign_mode_from_string(
        require(j, "mode", "config").get<std::string>());
    c.trials = require(j, "trials", "config").get<int>();
    c.dims = require(j, "dims", "config").get<std::vector<int>>();
    c.env_dim = require(j, "env_dim", "config").get<int>();
    c.seed = require(j, "seed", "config").get<std::uint64_t>();
    c.margin_filter = require(j, "margin_filter", "config").get<double>();
    c.group_size = require(j, "group_size", "config").get<int>();
    c.fast_path = require(j, "fast_path", "config").get<bool>();
    c.ambient_cap = require(j, "ambient_cap", "config").get<int>();
    c.analysis = analysis_options_from_json(require(j, "analysis", "config"));
    return c;
}

Json to_json(const TrialRecord& t) {
    Json j;
    j["index"] = t.index;
    j["kind"] = t.kind;
    j["outcome"] = t.outcome;
    j["margin"] = t.margin;
    j["dim_complement"] = t.dim_complement;
    j["agreement"] = t.agreement;
    j["rank"] = t.rank;
    j["notes"] = t.notes;
    return j;
}

TrialRecord trial_record_from_json(const Json& j) {
    TrialRecord t;
    t.index = require(j, "index", "trial").get<int>();
    t.kind = require(j, "kind", "trial").get<std::string>();
    t.outcome = require(j, "outcome", "trial").get<std::string>();
    t.margin = require(j, "margin", "trial").get<double>();
    t.dim_complement = require(j, "dim_complement", "trial").get<int>();
    t.agreement = require(j, "agreement", "trial").get<bool>();
    t.rank = require(j, "rank", "trial").get<int>();
    t.notes = require(j, "notes", "trial").get<std::vector<std::string>>();
    return t;
}

Json to_json(const CampaignCounts& c) {
    Json j;
    j["positive"] = c.positive;
    j["zero"] = c.zero;
    j["unknown"] = c.unknown;
    j["superactivated"] = c.superactivated;
    j["fastpath"] = c.fastpath;
    j["violation"] = c.violation;
    j["ok"] = c.ok;
    return j;
}

CampaignCounts campaign_counts_from_json(const Json& j) {
    CampaignCounts c;
    c.positive = require(j, "positive", "counts").get<int>();
    c.zero = require(j, "zero", "counts").get<int>();
    c.unknown = require(j, "unknown", "counts").get<int>();
    c.superactivated = require(j, "superactivated", "counts").get<int>();
    c.fastpath = require(j, "fastpath", "counts").get<int>();
    c.violation = require(j, "violation", "counts").get<int>();
    c.ok = require(j, "ok", "counts").get<int>();
    return c;
}

Json to_json(const CampaignReport& r) {
    Json j;
    j["config"] = to_json(r.config);
    Json trials = Json::array();
    for (const TrialRecord& t : r.trials) trials.push_back(to_json(t));
    j["trials"] = std::move(trials);
    j["aggregate"] = to_json(r.counts);
    j["passed"] = r.passed;
    j["failures"] = r.failures;
    return j;
}

CampaignReport campaign_report_from_json(const Json& j) {
    CampaignReport r;
    r.config = campaign_config_from_json(require(j, "config", "report"));
    for (const Json& t : require(j, "trials", "report"))
        r.trials.push_back(trial_record_from_json(t));
    r.counts = campaign_counts_from_json(require(j, "aggregate", "report"));
    r.passed = require(j, "passed", "report").get<bool>();
    r.failures =
        require(j, "failures", "report").get<std::vector<std::string>>();
    return r;
}

bool operator==(const ChannelFile& a, const ChannelFile& b) {
    if (a.name != b.name || a.d_in != b.d_in || a.d_out != b.d_out ||
        a.kraus.size() != b.kraus.size())
        return false;
    for (size_t k = 0; k < a.kraus.size(); ++k) {
        const MatrixXcd& ka = a.kraus[k];
        const MatrixXcd& kb = b.kraus[k];
        if (ka.rows() != kb.rows() || ka.cols() != kb.cols()) return false;
        if (!std::equal(ka.data(), ka.data() + ka.size(), kb.data()))
            return false;
    }
    return true;
}

bool operator==(const PureState& a, const PureState& b) {
    return vectors_equal(a.amplitudes, b.amplitudes) && a.dims == b.dims;
}

bool operator==(const CapacityVerdict& a, const CapacityVerdict& b) {
    return a.status == b.status && a.witness == b.witness &&
           a.margin == b.margin && a.method == b.method &&
           a.agreement == b.agreement && a.dim_support == b.dim_support &&
           a.dim_complement == b.dim_complement &&
           a.subspace_status == b.subspace_status &&
           a.minimization_status == b.minimization_status &&
           a.warnings == b.warnings;
}

bool operator==(const SuperactivationReport& a,
                const SuperactivationReport& b) {
    return a.individual == b.individual && a.joint == b.joint &&
           a.conclusion == b.conclusion &&
           a.fast_path_reason == b.fast_path_reason &&
           a.complement_dims == b.complement_dims &&
           a.joint_input_dim == b.joint_input_dim && a.warnings == b.warnings;
}

bool operator==(const AnalysisOptions& a, const AnalysisOptions& b) {
    return a.support_tol == b.support_tol && a.zero_tol == b.zero_tol &&
           a.use_subspace == b.use_subspace &&
           a.use_minimization == b.use_minimization &&
           a.search.restarts == b.search.restarts &&
           a.search.max_iter == b.search.max_iter &&
           a.search.found_tol == b.search.found_tol &&
           a.search.conv_tol == b.search.conv_tol &&
           a.search.seed == b.search.seed &&
           a.minimize.restarts == b.minimize.restarts &&
           a.minimize.max_iter == b.minimize.max_iter &&
           a.minimize.conv_tol == b.minimize.conv_tol &&
           a.minimize.seed == b.minimize.seed;
}

bool operator==(const CampaignConfig& a, const CampaignConfig& b) {
    return a.mode == b.mode && a.trials == b.trials && a.dims == b.dims &&
           a.env_dim == b.env_dim && a.seed == b.seed &&
           a.margin_filter == b.margin_filter &&
           a.group_size == b.group_size && a.fast_path == b.fast_path &&
           a.ambient_cap == b.ambient_cap && a.analysis == b.analysis;
}

bool operator==(const TrialRecord& a, const TrialRecord& b) {
    return a.index == b.index && a.kind == b.kind && a.outcome == b.outcome &&
           a.margin == b.margin && a.dim_complement == b.dim_complement &&
           a.agreement == b.agreement && a.rank == b.rank &&
           a.notes == b.notes;
}

bool operator==(const CampaignCounts& a, const CampaignCounts& b) {
    return a.positive == b.positive && a.zero == b.zero &&
           a.unknown == b.unknown && a.superactivated == b.superactivated &&
           a.fastpath == b.fastpath && a.violation == b.violation &&
           a.ok == b.ok;
}

bool operator==(const CampaignReport& a, const CampaignReport& b) {
    return a.config == b.config && a.trials == b.trials &&
           a.counts == b.counts && a.passed == b.passed &&
           a.failures == b.failures;
}

}  // namespace zecap
