#pragma once

#include <nlohmann/json.hpp>

#include "qmod/additive.hpp"
#include "qmod/errors.hpp"
#include "qmod/kn_retract.hpp"
#include "qmod/quiver_ops.hpp"
#include "qmod/representation.hpp"
#include "qmod/toric.hpp"

// JSON encodings shared by the CLI and the tests. Matrices are row-major
// arrays of rows, each entry a [re, im] pair.
namespace qmod::json {

using nlohmann::json;

// Structurally malformed input (wrong shapes or types).
class DecodeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

json encode(const CMatrix& m);
CMatrix decode_matrix(const json& j);

json encode(const GroupSpec& g);
GroupSpec decode_group(const json& j);

json encode(const Quiver& q);
json encode(const Word& w);
Word decode_word(const json& j);
json encode(const RelationSet& r);

json encode(const MarkingMap& m);
MarkingMap decode_markings(const json& j);

// {"group": {...}, "markings": {arrow: matrix}}
json encode(const Representation& f);
Representation decode_representation(const json& j, const Quiver& q);

// {"group": {...}, "values": {vertex: matrix}}
json encode(const GaugeElement& g);
GaugeElement decode_gauge(const json& j, const Quiver& q);

// {"n": k, "markings": {...}}; a "group" object may stand in for "n".
json encode(const AdditiveRep& x);
AdditiveRep decode_additive(const json& j, const Quiver& q);

json encode(const CollapseStep& s);
json encode(const ReductionTrace& t);
json encode(const KNResidual& r);
json encode(const FlowReport& r);
json encode(const DegenerationWitness& w);
json encode(const WeightCheck& c);
json encode(const OrbitCertificate& c);
json encode_integer(const Integer& x);
json encode(const MonomialBasis& b);
json encode(Complex z);

}  // namespace qmod::json
