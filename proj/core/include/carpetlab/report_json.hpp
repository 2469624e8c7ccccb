#pragma once

#include <string>
#include <vector>

#include "carpetlab/carpet.hpp"
#include "carpetlab/scenery.hpp"
#include "carpetlab/slicer.hpp"

namespace carpetlab {

inline constexpr const char* kSchema = "carpet-lab/1";

// Serialised JSON text; every object carries "schema": "carpet-lab/1".

std::string to_json(const DimensionReport& r);
std::string to_json(const SliceEstimate& e);
std::string to_json(const EmpiricalTriple& t);
std::string to_json(const BoundChainReport& r);
/// One JSON-lines record: step, u, probe entropies, retained mass, atoms.
std::string to_json_line(const ScenerySnapshot& s);

/// `k,N_k` with header.
std::string counts_csv(const std::vector<DepthCount>& counts);

/// Round-trip exact decimal for CSV cells.
std::string format_double(double v);

}  // namespace carpetlab
