#include "mataf/analytics.hpp"
