#pragma once

namespace qsearch::bessel {

// Power series for z <= 12, Hankel asymptotics above. Y uses the log series.
double j0(double z);
double j1(double z);
double y0(double z);
double y1(double z);

// z * Y1(z), finite at z = 0 where it tends to -2/pi.
double z_y1(double z);

}  // namespace qsearch::bessel
