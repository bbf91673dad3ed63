#pragma once

// Streaming Pareto-frontier monitoring for many users with strict
// partial-order preferences over categorical attributes.

#include "approx.hpp"
#include "clustering.hpp"
#include "core.hpp"
#include "filter_verify.hpp"
#include "frontier.hpp"
#include "io.hpp"
#include "profile.hpp"
#include "relation.hpp"
#include "schema.hpp"
#include "similarity.hpp"
#include "simulate.hpp"
#include "sliding_window.hpp"
