#pragma once

#include <tribkar.hpp>

namespace gen = tribkar::gen;
