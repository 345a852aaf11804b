#pragma once

#include <cmath>

namespace multwalk {

// Neumaier variant of Kahan summation: like Kahan but the correction also
// survives when the incoming term is larger than the running sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace multwalk
