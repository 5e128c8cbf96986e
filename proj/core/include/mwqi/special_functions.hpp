#pragma once

namespace mwqi {

/// Natural log of erfc(x), accurate where erfc itself underflows (x > ~26).
double log_erfc(double x);

}  // namespace mwqi
