#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "steklov/bounds.hpp"
#include "steklov/cheeger.hpp"
#include "steklov/dtn.hpp"
#include "steklov/graph.hpp"

namespace steklov {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

inline std::uint64_t fnv1a(std::string_view bytes)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline Json report_header(std::string_view input_bytes)
{
    Json j;
    j["tool_version"] = kToolVersion;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(input_bytes)));
    j["input_hash"] = std::string(buf);
    return j;
}

inline Json witness_names(const BoundaryProblem& bp, const std::vector<Index>& members)
{
    Json arr = Json::array();
    for (Index v : members) arr.push_back(bp.graph().name(v));
    return arr;
}

inline Json spectrum_report_json(const BoundaryProblem& bp, const DtnOperator& op,
                                 const SpectrumReport& rep, bool with_eigenvectors)
{
    Json j;
    Json order = Json::array();
    for (Index v : op.boundary_order) order.push_back(bp.graph().name(v));
    j["boundary_order"] = std::move(order);
    Json evs = Json::array();
    for (Index i = 0; i < rep.eigenvalues.size(); ++i) evs.push_back(rep.eigenvalues[i]);
    j["eigenvalues"] = std::move(evs);
    j["multiplicity_zero"] = rep.multiplicity_zero;
    j["lambda1"] = rep.lambda1;
    j["dim_E1"] = q_operator(bp).kernel_dim;
    j["components"] = bp.component_count();
    if (with_eigenvectors) {
        Json vecs = Json::array();
        for (Index c = 0; c < rep.eigenvectors.cols(); ++c) {
            Json col = Json::array();
            for (Index r = 0; r < rep.eigenvectors.rows(); ++r)
                col.push_back(rep.eigenvectors(r, c));
            vecs.push_back(std::move(col));
        }
        j["eigenvectors"] = std::move(vecs);
    }
    return j;
}

inline Json cheeger_result_json(const BoundaryProblem& bp, const CheegerResult& res)
{
    Json j;
    j["kind"] = to_string(res.kind);
    j["value"] = res.value;
    j["witness"] = witness_names(bp, res.witness);
    j["exact"] = res.exact;
    return j;
}

inline Json bounds_report_json(const BoundaryProblem& bp, const BoundsReport& rep)
{
    Json j;
    j["lambda1"] = rep.lambda1;
    j["h_E"] = rep.h_E;
    j["h_J"] = rep.h_J;
    j["h_classic"] = rep.h_classic;
    j["zeta1"] = rep.connected ? Json(rep.zeta_1) : Json(nullptr);
    j["constants_exact"] = rep.constants_exact;
    j["mu1_at_best_k"] = rep.mu1_at_best_k;
    j["best_k"] = rep.best_k;
    j["best_a"] = rep.best_a;
    j["escobar_lower"] = rep.escobar_lower;
    j["jammes_lower"] = rep.jammes_lower;
    j["corollary_lower"] = rep.corollary_lower;
    j["upper_2hE"] = rep.upper_2hE;
    j["escobar_witness"] = witness_names(bp, rep.escobar_result.witness);
    j["jammes_witness"] = witness_names(bp, rep.jammes_result.witness);
    j["classic_witness"] = witness_names(bp, rep.classic_result.witness);
    Json res;
    for (const auto& [name, r] : rep.residuals) {
        Json one;
        one["slack"] = r.slack;
        one["checked"] = r.checked;
        res[name] = std::move(one);
    }
    j["residuals"] = std::move(res);
    j["passed"] = rep.passed();
    return j;
}

}  // namespace steklov
