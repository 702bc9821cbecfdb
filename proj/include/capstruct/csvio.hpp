#ifndef CAPSTRUCT_CSVIO_HPP
#define CAPSTRUCT_CSVIO_HPP

#include <string>

#include "capstruct/functionals.hpp"
#include "capstruct/optimizer.hpp"
#include "capstruct/structure.hpp"
#include "capstruct/wasserstein.hpp"

namespace capstruct {

/// Shortest round-trip decimal representation.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// `date,<name>...` with one row per index entry.
std::string series_to_csv(const SeriesOutput& series);

/// Square matrix with a label header row and a label first column.
std::string matrix_to_csv(const DistanceMatrix& matrix);
DistanceMatrix matrix_from_csv(const std::string& text, const std::string& origin = "<memory>");

/// `date,<asset>...` weight rows.
std::string weights_to_csv(const WeightTrajectories& traj);
WeightTrajectories weights_from_csv(const std::string& text,
                                    const std::string& origin = "<memory>");

std::string functionals_to_csv(const FunctionalSeries& series);

} // namespace capstruct

#endif // CAPSTRUCT_CSVIO_HPP
