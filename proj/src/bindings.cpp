#include <pybind11/pybind11.h>
PYBIND11_MODULE(_hexcol, m) { m.doc() = "hexcol bindings"; }
