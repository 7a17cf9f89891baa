#pragma once
#include <iosfwd>
#include <string>

#include "ipevo/evolution.hpp"
#include "ipevo/point_process.hpp"

namespace ipevo {

enum class RenderMode { scaffolding, skewer, massflow };
RenderMode parse_render_mode(const std::string& s);

// fixed palette entry for a block id, stable across levels
std::string block_color(double block_id);

// scaffolding path with each spindle drawn as a shaded shape on its jump
void render_scaffolding_svg(std::ostream& os, const SpindlePointProcess& N);
// one bar strip per level; skewer mode left-aligns blocks, massflow centres them so the
// strips form a ribbon whose width is the total mass
void render_levels_svg(std::ostream& os, const EvolutionPath& path, RenderMode mode);

}  // namespace ipevo
