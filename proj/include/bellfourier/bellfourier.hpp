#pragma once

#include "bellfourier/core.hpp"
#include "bellfourier/fourier.hpp"
#include "bellfourier/io.hpp"
#include "bellfourier/lhv.hpp"
#include "bellfourier/quantum.hpp"
#include "bellfourier/theorem.hpp"
