#pragma once

#include "heun_series.hpp"
#include "params.hpp"
#include "polynomial.hpp"
#include "quantization.hpp"
#include "radial_oracle.hpp"
#include "tridiagonal.hpp"
#include "wavefunction.hpp"
