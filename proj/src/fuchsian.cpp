#include "bps/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bps {

SurfaceGroupWord::SurfaceGroupWord(std::vector<int> ls) {
    for (int l : ls) {
        if (l == 0) throw std::invalid_argument("word letter 0");
        if (!letters.empty() && letters.back() == -l) letters.pop_back();
        else letters.push_back(l);
    }
}

SurfaceGroupWord SurfaceGroupWord::inverse() const {
    std::vector<int> ls(letters.rbegin(), letters.rend());
    for (int& l : ls) l = -l;
    SurfaceGroupWord w;
    w.letters = std::move(ls);
    return w;
}

SurfaceGroupWord SurfaceGroupWord::concat(const SurfaceGroupWord& w) const {
    std::vector<int> ls = letters;
    ls.insert(ls.end(), w.letters.begin(), w.letters.end());
    return SurfaceGroupWord(std::move(ls));
}

SurfaceGroupWord SurfaceGroupWord::parse(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    std::vector<int> ls;
    while (in >> tok) {
        if (tok.size() < 2) throw std::invalid_argument("bad word token: " + tok);
        char kind = tok[0];
        int idx = std::stoi(tok.substr(1));
        if (idx < 1) throw std::invalid_argument("bad word token: " + tok);
        int gen;
        if (kind == 'a') gen = 2 * idx - 1;
        else if (kind == 'b') gen = 2 * idx;
        else if (kind == 'A') gen = -(2 * idx - 1);
        else if (kind == 'B') gen = -(2 * idx);
        else if (kind == 'g') gen = idx;       // plain generator index
        else if (kind == 'G') gen = -idx;
        else throw std::invalid_argument("bad word token: " + tok);
        ls.push_back(gen);
    }
    return SurfaceGroupWord(std::move(ls));
}

std::string SurfaceGroupWord::str() const {
    std::string out;
    for (int l : letters) {
        if (!out.empty()) out += ' ';
        int k = std::abs(l);
        char c = (k % 2 == 1) ? 'a' : 'b';
        if (l < 0) c = static_cast<char>(std::toupper(c));
        out += c;
        out += std::to_string((k + 1) / 2);
    }
    return out;
}

const MoebiusMap& FuchsianRepresentation::generator(int index_1based) const {
    if (index_1based < 1 || index_1based > rank())
        throw std::invalid_argument("generator index out of range");
    return images[static_cast<size_t>(index_1based - 1)];
}

MoebiusMap evaluate_word(const FuchsianRepresentation& rep, const SurfaceGroupWord& w) {
    MoebiusMap m;
    for (int l : w.letters) {
        const MoebiusMap& g = rep.generator(std::abs(l));
        m = m * (l > 0 ? g : g.inverse());
    }
    return m;
}

MoebiusMap surface_relator_image(const FuchsianRepresentation& rep) {
    MoebiusMap m;
    for (int i = 0; i < rep.genus; ++i) {
        const MoebiusMap& a = rep.images[static_cast<size_t>(2 * i)];
        const MoebiusMap& b = rep.images[static_cast<size_t>(2 * i + 1)];
        m = m * a * b * a.inverse() * b.inverse();
    }
    return m;
}

FuchsianRepresentation FuchsianRepresentation::from_generators(int genus,
                                                               std::vector<MoebiusMap> images,
                                                               bool real_entries) {
    FuchsianRepresentation rep;
    rep.genus = genus;
    rep.images = std::move(images);
    rep.real_entries = real_entries;
    if (real_entries)
        for (const MoebiusMap& m : rep.images)
            if (!m.has_real_entries())
                throw std::invalid_argument("generator image is not real");
    rep.surface_relator = (genus >= 2 && rep.rank() == 2 * genus);
    if (rep.surface_relator && !surface_relator_image(rep).is_identity(1e-8))
        throw std::invalid_argument("surface relator does not evaluate to the identity");
    return rep;
}

FuchsianRepresentation FuchsianRepresentation::cyclic(const MoebiusMap& m) {
    FuchsianRepresentation rep;
    rep.genus = 0;
    rep.images = {m};
    rep.real_entries = m.has_real_entries();
    rep.surface_relator = false;
    return rep;
}

FuchsianRepresentation FuchsianRepresentation::standard_genus2() {
    // opposite-side pairings of the regular octagon: translation length
    // 2 acosh(1 + sqrt 2) along the axes through i at angles k pi/4
    const double len = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
    const MoebiusMap t = MoebiusMap::translation_through_i(len);
    auto pairing = [&](int k) {
        MoebiusMap r = MoebiusMap::rotation_about_i(k * M_PI / 4.0);
        return r * t * r.inverse();
    };
    MoebiusMap g0 = pairing(0), g1 = pairing(1), g2 = pairing(2), g3 = pairing(3);
    // re-marking with the canonical relator [a1,b1][a2,b2] = 1
    MoebiusMap a1 = g0;
    MoebiusMap b1 = g1;
    MoebiusMap a2 = g1 * g3.inverse() * g0.inverse();
    MoebiusMap b2 = g0 * g2 * g1.inverse();
    return from_generators(2, {a1, b1, a2, b2});
}

namespace {

// lexicographic canonicity among all cyclic rotations of w and of w^{-1}
bool is_canonical_class_rep(const std::vector<int>& w) {
    const size_t n = w.size();
    int lo = w[0];
    for (int l : w) lo = std::min({lo, l, -l});
    if (w[0] != lo) return false;  // cheap reject: minimum letter must lead
    auto less_rot = [&](const std::vector<int>& v, size_t shift) {
        for (size_t i = 0; i < n; ++i) {
            int x = v[(i + shift) % n];
            if (x != w[i]) return x < w[i];
        }
        return false;
    };
    for (size_t s = 1; s < n; ++s)
        if (less_rot(w, s)) return false;
    std::vector<int> inv(n);
    for (size_t i = 0; i < n; ++i) inv[i] = -w[n - 1 - i];
    for (size_t s = 0; s < n; ++s)
        if (less_rot(inv, s)) return false;
    return true;
}

struct SystoleSearch {
    const FuchsianRepresentation& rep;
    std::vector<MoebiusMap> gens;  // 0..r-1 generators, r..2r-1 inverses
    int rank;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> word;

    explicit SystoleSearch(const FuchsianRepresentation& r) : rep(r), rank(r.rank()) {
        for (int i = 1; i <= rank; ++i) gens.push_back(r.generator(i));
        for (int i = 1; i <= rank; ++i) gens.push_back(r.generator(i).inverse());
    }

    int letter_of(int slot) const { return slot < rank ? slot + 1 : -(slot - rank + 1); }
    int inverse_slot(int slot) const { return (slot + rank) % (2 * rank); }

    void visit(const MoebiusMap& m) {
        if (!is_canonical_class_rep(word)) return;
        if (m.is_identity(1e-8)) return;  // trivial element of the group
        MapAnalysis an = analyze(m);
        if (an.kind == MapKind::Loxodromic && an.translation_length < best)
            best = an.translation_length;
    }

    void dfs(const MoebiusMap& m, int last_slot, int first_slot, int remaining) {
        for (int s = 0; s < 2 * rank; ++s) {
            if (last_slot >= 0 && s == inverse_slot(last_slot)) continue;  // free reduction
            MoebiusMap next = m * gens[static_cast<size_t>(s)];
            word.push_back(letter_of(s));
            int fs = (first_slot < 0) ? s : first_slot;
            if (s != inverse_slot(fs)) visit(next);  // cyclically reduced
            if (remaining > 1) dfs(next, s, fs, remaining - 1);
            word.pop_back();
        }
    }
};

}  // namespace

double systole_estimate(const FuchsianRepresentation& rep, int max_length) {
    if (max_length < 1) throw std::invalid_argument("max_length must be >= 1");
    if (!rep.real_entries)
        throw std::invalid_argument("systole enumeration needs real generator images");
    SystoleSearch search(rep);
    search.dfs(MoebiusMap::identity(), -1, -1, max_length);
    return search.best;
}

}  // namespace bps
