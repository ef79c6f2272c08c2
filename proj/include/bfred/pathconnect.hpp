#pragma once

#include <optional>
#include <vector>

#include "bfred/bfredholm.hpp"
#include "bfred/operator.hpp"

namespace bfred {

/* Sampled path t in [0,1] -> BlockOperator, one sample per grid point. */
struct OperatorPath {
  std::vector<Rational> grid;       // strictly increasing, 0 = first, 1 = last
  std::vector<BlockOperator> samples;
};

/* Grid shape, endpoint values 0 and 1, signature coherence.
 * Throws malformed_path. */
void validate_path(const OperatorPath& p);

enum class SampleStatus { fredholm, bfredholm, indeterminate };

const char* to_string(SampleStatus s);

struct PathPoint {
  Rational t;
  SampleStatus status = SampleStatus::indeterminate;
  std::optional<long> index;  // certified index when status is not indeterminate
};

struct PathReport {
  bool all_bfredholm = false;  // every sample certified (Fredholm counts)
  bool all_fredholm = false;
  std::vector<PathPoint> profile;
};

/* Classifies every sample; indeterminate samples are reported, never an
 * error.  This is where index discontinuity becomes visible data. */
PathReport verify_path(const OperatorPath& p);

/* The [1] + t*(backward shift) family on a uniform K-grid: starts at the
 * index-0 pair [1] + 0, and for every t > 0 is Fredholm of index 1.  The
 * smallest honest witness that the index cannot be continuous. */
struct PathWithReport {
  OperatorPath path;
  PathReport report;
};

PathWithReport tbp_demo(long k);

enum class ConnectMode { fredholm_preserving, bfredholm };

/* Connects two certified equal-index operators with a sampled path of
 * 6 segments (K samples each): shift in by a verified small lambda,
 * fade source patches out, carry the symbols across (through zero in
 * bfredholm mode, by root motion at constant winding in
 * fredholm_preserving mode), fade target patches in, shift back out.
 * Finite blocks interpolate linearly through the middle.
 * Throws index_mismatch, shape_mismatch, certification_failed,
 * fredholm_path_unsupported. */
OperatorPath connect_equal_index(const BlockOperator& s, const BlockOperator& t, long k,
                                 ConnectMode mode);

/* Equal-winding symbol homotopy: pulls the inside roots of f to 0 and
 * pushes the outside roots away, landing on c*z^w, then reverses into g.
 * Intermediate symbols are float-computed, snapped to Gaussian
 * rationals, and re-certified exactly (circle-nonvanishing, winding w);
 * endpoints are f and g exactly.  Throws winding_mismatch,
 * snap_certification_failed. */
std::vector<LaurentPoly> root_radial_homotopy(const LaurentPoly& f, const LaurentPoly& g,
                                              long k);

}  // namespace bfred
