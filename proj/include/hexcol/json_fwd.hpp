#pragma once
// The map/coloring metadata is held by value, so pull in the full definition.
#include <json.hpp>
