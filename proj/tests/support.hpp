#pragma once

#include <functional>

#include "doctest.h"
#include "qfourier/errors.hpp"
#include "qfourier/glsm.hpp"

namespace qftest {

inline qfourier::GlsmData f1Data() {
  qfourier::GlsmData g;
  g.weights = {{1, 0}, {0, 1}, {1, 0}, {1, 1}};
  g.chamber = {2, 1};
  return g;
}

inline qfourier::GlsmData p1p1Data() {
  qfourier::GlsmData g;
  g.weights = {{1, 0}, {1, 0}, {0, 1}, {0, 1}};
  g.chamber = {1, 1};
  return g;
}

inline qfourier::IntMatrix diagonal(int n) { return qfourier::IntMatrix(n, std::vector<int>{1}); }

inline qfourier::ErrorKind kindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const qfourier::Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return qfourier::ErrorKind::Input;
}

}  // namespace qftest
