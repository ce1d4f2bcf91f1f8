#pragma once

#include "landau/field.hpp"

#include <filesystem>
#include <iosfwd>

namespace landau {

// Binary container, little-endian:
//   char[8]  "LNDFLD01"
//   u32      representation (0 nodal, 1 mixed, 2 spectral)
//   u32      reserved (0)
//   f64 L, u64 N_x, f64 V_max, u64 N_v
//   N_x * N_v pairs (f64 re, f64 im), row-major
void write_field(const std::filesystem::path& path, const DistributionField& f);
DistributionField read_field(const std::filesystem::path& path);

void write_field(std::ostream& os, const DistributionField& f);
DistributionField read_field(std::istream& is);

// CSV for small grids: row,col,x_or_k,v_or_eta,re,im
void write_field_csv(std::ostream& os, const DistributionField& f);

} // namespace landau
