#pragma once

#include "bolhalf/qseries.hpp"

#include <iosfwd>
#include <string>

namespace bolhalf {

// Text interchange format:
//   M v_num v_den P_num P_den mode          (mode: "exact" or "float:<bits>"; P may be "inf 1")
//   e_num e_den re_num re_den im_num im_den (exact mode, one line per nonzero coefficient)
//   e_num e_den re im                       (floating mode)
void write_series(std::ostream& os, const ExactSeries& f);
void write_series(std::ostream& os, const FloatSeries& f);
void write_series(std::ostream& os, const AnySeries& f);
AnySeries read_series(std::istream& is);

void save_series(const std::string& path, const AnySeries& f);
AnySeries load_series(const std::string& path);

std::string series_to_string(const AnySeries& f);
AnySeries series_from_string(const std::string& text);

} // namespace bolhalf
