#include "mataf/io.hpp"
