#pragma once
// Umbrella header.

#include <gfact/graph.hpp>
#include <gfact/metric.hpp>
#include <gfact/product.hpp>
#include <gfact/isomorphism.hpp>
#include <gfact/isometry.hpp>
#include <gfact/relations.hpp>
#include <gfact/decompose.hpp>
#include <gfact/treefast.hpp>
#include <gfact/embed.hpp>
#include <gfact/generate.hpp>
#include <gfact/io.hpp>
