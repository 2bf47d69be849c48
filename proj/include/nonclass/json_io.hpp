#pragma once

// State descriptions in and reports out.
//
//   {"type":"fock","coeffs":[[re,im],...]}
//   {"type":"coherent_superposition","terms":[{"coeff":[re,im],"alpha":[re,im]},...]}
//   {"type":"squeezed","alpha":[re,im],"zeta":{"r":r,"theta":t}}
//   {"type":"mixture","components":[{"weight":w,"state":{...}},...]}

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "nonclass/depth.hpp"
#include "nonclass/diagnostics.hpp"
#include "nonclass/distance.hpp"
#include "nonclass/states.hpp"

namespace nonclass {

using Json = nlohmann::json;

/// DomainError naming the offending field path on any schema violation.
StateSpec parse_state(const Json& doc);
StateSpec parse_state_file(const std::filesystem::path& path);

/// Reads and parses a JSON file; DomainError if unreadable or malformed.
Json read_json_file(const std::filesystem::path& path);

Json to_json(const DepthReport& report);
Json to_json(const DistanceReport& report);
Json to_json(const DiagnosticsReport& report);

/// Sorted keys, two-space indent, shortest round-trip floats: parsing the
/// output and dumping it again reproduces it byte for byte.
std::string canonical_dump(const Json& doc);

/// Locale-independent shortest round-trip text of a double ("nan", "inf" for
/// non-finite values).
std::string format_double(double value);

/// `tau,x_min,y_min,R_min`
void write_min_trace_csv(std::ostream& out, const DepthReport& report);
/// `seed_x,seed_y,beta_x,beta_y,q`
void write_ascent_trace_csv(std::ostream& out, const DistanceReport& report);

}  // namespace nonclass
