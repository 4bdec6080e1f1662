#pragma once

#include <string>

#include <json.hpp>

#include "dilhom/classify.hpp"
#include "dilhom/coding.hpp"
#include "dilhom/dilation.hpp"
#include "dilhom/space.hpp"
#include "dilhom/verify.hpp"

namespace dilhom {

using json = nlohmann::json;

json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const json& j);

json series_to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const FieldSpec& spec, const json& j);

json descriptor_to_json(const SpaceDescriptor& d);
SpaceDescriptor descriptor_from_json(const json& j);

json point_to_json(const Space& space, const Point& x);
Point point_from_json(const Space& space, const json& j);

json address_to_json(const Address& a);
Address address_from_json(const json& j);

json balltree_to_json(const BallTree& t);

json dilation_to_json(const Space& space, const DilationMap& u);
DilationMap dilation_from_json(const Space& space, const json& j);

json report_to_json(const ClassificationReport& r);

json sweep_to_json(const SweepResult& r);

/// CSV: header row of point ids p0..p{n-1}, then the symmetric numeric
/// matrix. The sidecar JSON carries the symbolic entries so exact Geo
/// exponents survive the round trip.
std::string distmat_to_csv(const DistanceMatrix& m);
json distmat_sidecar(const DistanceMatrix& m);
DistanceMatrix distmat_from_csv(const std::string& csv);
void distmat_apply_sidecar(DistanceMatrix& m, const json& sidecar);

} // namespace dilhom
