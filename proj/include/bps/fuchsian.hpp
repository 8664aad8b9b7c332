#pragma once

#include <string>
#include <vector>

#include "bps/moebius.hpp"

// Surface-group representations into PSL(2,R): the regular-octagon genus-2
// group, word evaluation and systole estimation by exhaustive enumeration.

namespace bps {

// Freely reduced word over generators; letter +k is generator k (1-based),
// -k its inverse. For a surface representation of genus g the generators are
// a1, b1, ..., ag, bg in that order (a_i = 2i-1, b_i = 2i).
struct SurfaceGroupWord {
    std::vector<int> letters;

    SurfaceGroupWord() = default;
    explicit SurfaceGroupWord(std::vector<int> ls);  // freely reduces

    SurfaceGroupWord inverse() const;
    SurfaceGroupWord concat(const SurfaceGroupWord& w) const;
    bool empty() const { return letters.empty(); }

    // space-separated tokens, e.g. "a1 B1 a2"; capital letter = inverse
    static SurfaceGroupWord parse(const std::string& text);
    std::string str() const;
};

struct FuchsianRepresentation {
    int genus = 0;                    // >= 2 when surface_relator, else ignored
    std::vector<MoebiusMap> images;   // one per generator
    bool real_entries = true;         // false marks quasi-Fuchsian inputs
    bool surface_relator = false;     // true: images.size() == 2*genus, relator checked

    // Regular hyperbolic octagon with vertex angle pi/4 centered at i,
    // opposite-side pairings, re-marked so the canonical relator
    // [a1,b1][a2,b2] holds. All four generators are systolic.
    static FuchsianRepresentation standard_genus2();

    // Single-generator mode (free group of rank 1); no relator.
    static FuchsianRepresentation cyclic(const MoebiusMap& m);

    // General constructor; checks real entries (1e-12) and, when
    // 2*genus == images.size(), the surface relator (projectively identity
    // within 1e-8). Throws std::invalid_argument on violation.
    static FuchsianRepresentation from_generators(int genus, std::vector<MoebiusMap> images,
                                                  bool real_entries = true);

    int rank() const { return static_cast<int>(images.size()); }
    const MoebiusMap& generator(int index_1based) const;
};

MoebiusMap evaluate_word(const FuchsianRepresentation& rep, const SurfaceGroupWord& w);

// Product of [a_i, b_i] over the genus.
MoebiusMap surface_relator_image(const FuchsianRepresentation& rep);

// Minimum translation length over non-trivial cyclically reduced words up to
// max_length, one representative per conjugacy class up to cyclic rotation
// and inversion. Words evaluating projectively to the identity represent the
// trivial element and are skipped. Throws std::invalid_argument if
// max_length < 1.
double systole_estimate(const FuchsianRepresentation& rep, int max_length);

}  // namespace bps
