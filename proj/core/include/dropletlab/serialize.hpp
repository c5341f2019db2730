#ifndef DROPLETLAB_SERIALIZE_HPP
#define DROPLETLAB_SERIALIZE_HPP

#include <nlohmann/json.hpp>

#include "dropletlab/asymptotics.hpp"
#include "dropletlab/interaction.hpp"
#include "dropletlab/model.hpp"
#include "dropletlab/optimizer.hpp"
#include "dropletlab/quadrature.hpp"

namespace dropletlab {

void to_json(nlohmann::json& j, const ModelParams& p);
void from_json(const nlohmann::json& j, ModelParams& p);

void to_json(nlohmann::json& j, const RieszConstants& k);
void from_json(const nlohmann::json& j, RieszConstants& k);

void to_json(nlohmann::json& j, const QuadratureResult& q);

void to_json(nlohmann::json& j, const MassPartition& m);
void from_json(const nlohmann::json& j, MassPartition& m);

/// Points serialize as an array of length-d arrays.
void to_json(nlohmann::json& j, const PointConfiguration& c);
void from_json(const nlohmann::json& j, PointConfiguration& c);

void to_json(nlohmann::json& j, const EnergyParts& e);

void to_json(nlohmann::json& j, const OptimizerOptions& o);
void from_json(const nlohmann::json& j, OptimizerOptions& o);

void to_json(nlohmann::json& j, const ConfigResult& r);
void to_json(nlohmann::json& j, const PartitionResult& r);
void to_json(nlohmann::json& j, const EnergyBreakdown& b);
void to_json(nlohmann::json& j, const ExpansionReport& r);
void to_json(nlohmann::json& j, const ExpansionSweep& s);
void to_json(nlohmann::json& j, const SubadditivityVerdict& v);
void to_json(nlohmann::json& j, const GeneralizedBallEnergy& g);
void to_json(nlohmann::json& j, const LimitSweep& s);

} // namespace dropletlab

#endif
