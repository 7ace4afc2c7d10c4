#pragma once

// Bundled example programs and queries, used by the self-test and the test
// suites. Named by what the knowledge says, not where it came from.

namespace plover::builtin {

// Each program ends with a vacuous strict fact naming the individual the
// bundled queries talk about; it pins the Herbrand universe without
// constraining anything (a tautology over one atom).

// Penguins are birds; birds have legs with probability at least 0.95.
inline constexpr const char* kBirdsLegs =
    "(b(X)|p(X))[1,1].\n"
    "(l(X)|b(X))[0.95,1].\n"
    "(b(tweety)|b(tweety))[1,1]. % tweety inhabits the domain\n";

// The above plus flying: birds fly with probability 0.9..0.95, penguins fly
// with probability at most 0.05.
inline constexpr const char* kPenguins =
    "(b(X)|p(X))[1,1].\n"
    "(l(X)|b(X))[0.95,1].\n"
    "(f(X)|b(X))[0.9,0.95].\n"
    "(f(X)|p(X))[0,0.05].\n"
    "(b(tweety)|b(tweety))[1,1]. % tweety inhabits the domain\n";

// Magpies are birds; birds chirp with probability 0.7..0.8; magpies chirp
// with probability at most 0.99.
inline constexpr const char* kMagpies =
    "(b(X)|m(X))[1,1].\n"
    "(c(X)|b(X))[0.7,0.8].\n"
    "(c(X)|m(X))[0,0.99].\n"
    "(b(sam)|b(sam))[1,1]. % sam inhabits the domain\n";

// Two defaults that clash on the same proposition; no toleration ordering
// exists, so the program is inconsistent.
inline constexpr const char* kClashingDefaults =
    "(p|true)[0.3,0.4].\n"
    "(p|true)[0.6,0.7].\n";

inline constexpr const char* kLegsQuery = "?(l(tweety)|p(tweety))[L, U].";
inline constexpr const char* kFliesQuery = "?(f(tweety)|p(tweety))[L, U].";
inline constexpr const char* kChirpsQuery = "?(c(sam)|m(sam))[L, U].";

}  // namespace plover::builtin
