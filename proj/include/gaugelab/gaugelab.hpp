#pragma once

#include "gaugelab/core/constants.hpp"
#include "gaugelab/core/errors.hpp"
#include "gaugelab/core/parallel.hpp"
#include "gaugelab/core/quadrature.hpp"
#include "gaugelab/core/report.hpp"
#include "gaugelab/core/vec3.hpp"
#include "gaugelab/em/catalog.hpp"
#include "gaugelab/em/potentials.hpp"
#include "gaugelab/classical/compare.hpp"
#include "gaugelab/classical/dynamics.hpp"
#include "gaugelab/quantum/pulse.hpp"
#include "gaugelab/quantum/residual.hpp"
#include "gaugelab/quantum/volkov.hpp"
#include "gaugelab/unitarity/defect.hpp"
#include "gaugelab/unitarity/grid_operator.hpp"
#include "gaugelab/keldysh/keldysh.hpp"
#include "gaugelab/io/config_node.hpp"
#include "gaugelab/io/writers.hpp"
