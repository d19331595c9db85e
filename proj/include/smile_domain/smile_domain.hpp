#pragma once

#include "certificate.hpp"
#include "core_svi.hpp"
#include "errors.hpp"
#include "extremal_decorrelated.hpp"
#include "fukasawa.hpp"
#include "numerics.hpp"
#include "sigma_star_oracle.hpp"
#include "ssvi.hpp"
#include "symmetric.hpp"
#include "vanishing.hpp"
