#include "mataf/synth.hpp"
