// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <string>
#include <vector>

#include "hatsim/config.hpp"
#include "hatsim/table.hpp"

// Subcommand bodies: each turns a validated RunConfig into an output table.
namespace hatsim::runs {

const char* version();
int workers(const RunConfig& c);

// tau1 roots in meta (tau1_sh, tau1_res); rows mode,tau1,residual,interior_amplitude.
Table tune(const RunConfig& c, const std::vector<double>& extra_tau = {});
// region,ball,mass,total,probability
Table probabilities(const RunConfig& c);
enum class Ball { Sh, Empty };
// r,re,im,abs of the s-wave field on [0, L]
Table eigen_field(const RunConfig& c, Ball ball, int points);
// n,re_c,im_c,abs_c
Table scatter(const RunConfig& c);

enum class Source { Scatter, Eigen, Limit };
// x,y,re,im,abs on the plane {axis = offset}; NaN outside B_L
Table field_plane(const RunConfig& c, Source src, char normal, double offset, int grid, double extent);
// r,re,im,abs along an axis through the origin, r in [-L, L]
Table field_axis(const RunConfig& c, Source src, char axis, int grid);

Table monte(const RunConfig& c);
Table interact(const RunConfig& c);
Table veff(const RunConfig& c, int points);

// kind,size,layers,outer,re_dtn,im_dtn,error
Table hetero(const RunConfig& c);
// material_index,r_inner,r_outer,m,V
Table stack(const RunConfig& c, int J);
// r,V,l1,l2,l3,l4
Table ratios(const RunConfig& c, int points);

}  // namespace hatsim::runs
