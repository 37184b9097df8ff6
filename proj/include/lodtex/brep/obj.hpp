#pragma once

#include "lodtex/brep/facade.hpp"

#include <ostream>
#include <string>

namespace lodtex::brep {

/// Writes 4 v, 4 vt and 2 f records. vt follow q1..q4 as (0,0),(1,0),(1,1),(0,1).
void write_facade_obj(std::ostream& out, const Quad3D& quad, const std::string& mtl_file,
                      const std::string& material);

void write_facade_mtl(std::ostream& out, const std::string& material, const std::string& texture_file);

}  // namespace lodtex::brep
