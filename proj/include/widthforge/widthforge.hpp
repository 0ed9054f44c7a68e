#ifndef WIDTHFORGE_WIDTHFORGE_HPP
#define WIDTHFORGE_WIDTHFORGE_HPP

#include "widthforge/cut_values.hpp"
#include "widthforge/decomp.hpp"
#include "widthforge/error.hpp"
#include "widthforge/generators.hpp"
#include "widthforge/graph.hpp"
#include "widthforge/harness.hpp"
#include "widthforge/newick.hpp"
#include "widthforge/reductions.hpp"
#include "widthforge/report_json.hpp"
#include "widthforge/uqc.hpp"
#include "widthforge/widths.hpp"

#endif
