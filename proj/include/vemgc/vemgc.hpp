#pragma once

#include "assembly.hpp"
#include "cell_ops.hpp"
#include "dof_layout.hpp"
#include "face_ops.hpp"
#include "interpolate.hpp"
#include "manufactured.hpp"
#include "mesh.hpp"
#include "mesh_io.hpp"
#include "monomial.hpp"
#include "quadrature.hpp"
#include "solvers.hpp"
#include "study.hpp"
#include "verify.hpp"
#include "vtk.hpp"
