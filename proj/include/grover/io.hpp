#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "grover/mixed.hpp"
#include "grover/state.hpp"
#include "grover/statevector.hpp"

namespace grover::io {

using json = nlohmann::json;

enum class Format { csv, json };

/// 17 significant digits: enough for decimal round-trip of any double, which
/// is what makes golden-file comparisons of emitted numbers meaningful.
inline std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace detail {

inline void require_object_keys(const json& j, std::initializer_list<const char*> keys,
                                const std::string& what) {
    if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
    for (const auto& item : j.items()) {
        if (std::find_if(keys.begin(), keys.end(), [&](const char* k) {
                return item.key() == k;
            }) == keys.end()) {
            throw ParseError(what + ": unknown key \"" + item.key() + "\"");
        }
    }
    for (const char* k : keys) {
        if (!j.contains(k)) throw ParseError(what + ": missing key \"" + k + "\"");
    }
}

inline int read_qubit_count(const json& j, const char* key, const std::string& what) {
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ParseError(what + ": \"" + key + "\" must be an integer");
    return v.get<int>();
}

inline ComplexVector<double> read_amplitudes(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": \"amplitudes\" must be an array");
    ComplexVector<double> v(static_cast<Index>(j.size()));
    Index i = 0;
    for (const json& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number()) {
            throw ParseError(what + ": amplitude " + std::to_string(i) +
                             " must be a [re, im] pair");
        }
        v(i++) = {entry[0].get<double>(), entry[1].get<double>()};
    }
    return v;
}

inline json write_amplitudes(const ComplexVector<double>& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) {
        arr.push_back({v(i).real(), v(i).imag()});
    }
    return arr;
}

} // namespace detail

inline PureState<double> state_from_json(const json& j) {
    detail::require_object_keys(j, {"n", "amplitudes"}, "state");
    const int n = detail::read_qubit_count(j, "n", "state");
    return PureState<double>(n, detail::read_amplitudes(j.at("amplitudes"), "state"));
}

inline json state_to_json(const PureState<double>& state) {
    return {{"n", state.num_qubits()}, {"amplitudes", detail::write_amplitudes(state.amplitudes())}};
}

inline MixedEnsemble<double> ensemble_from_json(const json& j) {
    detail::require_object_keys(j, {"n", "members"}, "ensemble");
    const int n = detail::read_qubit_count(j, "n", "ensemble");
    const json& members = j.at("members");
    if (!members.is_array()) throw ParseError("ensemble: \"members\" must be an array");
    std::vector<MixedEnsemble<double>::Member> parsed;
    parsed.reserve(members.size());
    for (const json& m : members) {
        detail::require_object_keys(m, {"p", "amplitudes"}, "ensemble member");
        if (!m.at("p").is_number()) throw ParseError("ensemble member: \"p\" must be a number");
        parsed.push_back(
            {m.at("p").get<double>(),
             PureState<double>(n, detail::read_amplitudes(m.at("amplitudes"), "ensemble member"))});
    }
    return MixedEnsemble<double>(n, std::move(parsed));
}

inline json ensemble_to_json(const MixedEnsemble<double>& ens) {
    json members = json::array();
    for (const auto& m : ens.members()) {
        members.push_back(
            {{"p", m.weight}, {"amplitudes", detail::write_amplitudes(m.state.amplitudes())}});
    }
    return {{"n", ens.num_qubits()}, {"members", members}};
}

inline MarkedSet marked_set_from_json(int num_qubits, const json& j) {
    detail::require_object_keys(j, {"indices"}, "marked set");
    const json& arr = j.at("indices");
    if (!arr.is_array()) throw ParseError("marked set: \"indices\" must be an array");
    std::vector<Index> indices;
    indices.reserve(arr.size());
    for (const json& v : arr) {
        if (!v.is_number_integer()) throw ParseError("marked set: indices must be integers");
        indices.push_back(v.get<Index>());
    }
    return MarkedSet(num_qubits, std::move(indices));
}

inline json marked_set_to_json(const MarkedSet& marked) {
    return {{"indices", marked.indices()}};
}

inline BipartiteState<double> bipartite_from_json(const json& j) {
    detail::require_object_keys(j, {"n_alice", "k_bob", "amplitudes"}, "bipartite state");
    const int n = detail::read_qubit_count(j, "n_alice", "bipartite state");
    const int k = detail::read_qubit_count(j, "k_bob", "bipartite state");
    return BipartiteState<double>(n, k,
                                  detail::read_amplitudes(j.at("amplitudes"), "bipartite state"));
}

inline json bipartite_to_json(const BipartiteState<double>& state) {
    return {{"n_alice", state.n_alice()},
            {"k_bob", state.k_bob()},
            {"amplitudes", detail::write_amplitudes(state.amplitudes())}};
}

/// Parse a JSON document from a file, mapping stream and syntax problems to
/// the library's error taxonomy.
inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError("\"" + path + "\": " + e.what());
    }
    return j;
}

/// Emit a probability trace. CSV uses the fixed header
/// t,p_success,p_min,p_max,kbar_re,kbar_im,lbar_re,lbar_im; JSON is an array
/// of objects with the same field names.
inline void emit_trace(const ProbabilityTrace<double>& trace, Format format, std::ostream& out) {
    if (trace.entries.empty()) throw InvalidCount("trace is empty");
    if (format == Format::csv) {
        out << "t,p_success,p_min,p_max,kbar_re,kbar_im,lbar_re,lbar_im\n";
        for (const auto& e : trace.entries) {
            out << e.t << ',' << format_real(e.p_success) << ',' << format_real(e.p_min) << ','
                << format_real(e.p_max) << ',' << format_real(e.kbar.real()) << ','
                << format_real(e.kbar.imag()) << ',' << format_real(e.lbar.real()) << ','
                << format_real(e.lbar.imag()) << '\n';
        }
    } else {
        json arr = json::array();
        for (const auto& e : trace.entries) {
            arr.push_back({{"t", e.t},
                           {"p_success", e.p_success},
                           {"p_min", e.p_min},
                           {"p_max", e.p_max},
                           {"kbar_re", e.kbar.real()},
                           {"kbar_im", e.kbar.imag()},
                           {"lbar_re", e.lbar.real()},
                           {"lbar_im", e.lbar.imag()}});
        }
        out << arr.dump(2) << '\n';
    }
    if (!out) throw IoFailure("failed to write trace");
}

inline ProbabilityTrace<double> trace_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("trace: expected a JSON array");
    ProbabilityTrace<double> trace;
    trace.entries.reserve(j.size());
    for (const json& e : j) {
        detail::require_object_keys(
            e, {"t", "p_success", "p_min", "p_max", "kbar_re", "kbar_im", "lbar_re", "lbar_im"},
            "trace entry");
        trace.entries.push_back({e.at("t").get<Index>(),
                                 e.at("p_success").get<double>(),
                                 e.at("p_min").get<double>(),
                                 e.at("p_max").get<double>(),
                                 {e.at("kbar_re").get<double>(), e.at("kbar_im").get<double>()},
                                 {e.at("lbar_re").get<double>(), e.at("lbar_im").get<double>()}});
    }
    return trace;
}

} // namespace grover::io
