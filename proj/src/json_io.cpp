// SPDX-License-Identifier: Apache-2.0
#include "partsim/json_io.hpp"

#include <sstream>

namespace partsim {

using nlohmann::json;

json spec_to_json(const EnsembleSpec& spec) {
    json params = json::object();
    switch (spec.family) {
        case Family::geom_power:
        case Family::exp_power:
        case Family::log_ratio:
            params["r"] = spec.r;
            params["rho"] = spec.rho;
            break;
        case Family::binomial:
        case Family::exp_polynomial:
            params["m"] = spec.m;
            params["rho"] = spec.rho;
            break;
        case Family::exp_rational:
            params["b"] = spec.b;
            params["rho"] = spec.rho;
            break;
        case Family::raw: {
            json coeffs = json::array();
            for (const auto& a : spec.raw_coeffs) {
                std::ostringstream os;
                os << a;
                coeffs.push_back(os.str());
            }
            params["coeffs"] = coeffs;
            break;
        }
    }
    return json{{"family", family_name(spec.family)},
                {"params", params},
                {"cutoff_k", spec.cutoff_k}};
}

EnsembleSpec spec_from_json(const json& j) {
    const Family fam = family_from_name(j.at("family").get<std::string>());
    const auto& params = j.at("params");
    const long long cutoff = j.value("cutoff_k", 512);
    switch (fam) {
        case Family::geom_power:
            return EnsembleSpec::geom_power(params.at("r").get<double>(),
                                            params.at("rho").get<double>(), cutoff);
        case Family::binomial:
            return EnsembleSpec::binomial(params.at("m").get<long long>(),
                                          params.at("rho").get<double>(), cutoff);
        case Family::exp_rational:
            return EnsembleSpec::exp_rational(params.at("b").get<double>(),
                                              params.at("rho").get<double>(), cutoff);
        case Family::exp_power:
            return EnsembleSpec::exp_power(params.at("r").get<double>(),
                                           params.at("rho").get<double>(), cutoff);
        case Family::exp_polynomial:
            return EnsembleSpec::exp_polynomial(params.at("m").get<long long>(),
                                                params.at("rho").get<double>(), cutoff);
        case Family::log_ratio:
            return EnsembleSpec::log_ratio(params.at("r").get<double>(),
                                           params.at("rho").get<double>(), cutoff);
        case Family::raw: {
            std::vector<Rat> coeffs;
            for (const auto& c : params.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
            return EnsembleSpec::raw(std::move(coeffs), cutoff);
        }
    }
    throw DomainError("spec_from_json: invalid family");
}

json partition_to_json(const Partition& p) {
    json counts = json::object();
    for (const auto& [part, mult] : p.counts) counts[std::to_string(part)] = mult;
    return json{{"counts", counts}, {"total", p.total}};
}

Partition partition_from_json(const json& j) {
    std::map<long long, long long> counts;
    for (const auto& [key, val] : j.at("counts").items())
        counts[std::stoll(key)] = val.get<long long>();
    Partition p = Partition::from_counts(std::move(counts));
    if (j.contains("total") && j.at("total").get<long long>() != p.total)
        throw DomainError("partition_from_json: stored total disagrees with counts");
    return p;
}

json report_to_json(const VerificationReport& rep) {
    json stats = json::object();
    for (const auto& [k, v] : rep.statistics) stats[k] = v;
    return json{{"check", rep.check_name},     {"spec", rep.spec_descriptor},
                {"n_values", rep.n_values},    {"statistics", stats},
                {"pass", rep.pass},            {"seed", rep.seed}};
}

}  // namespace partsim
