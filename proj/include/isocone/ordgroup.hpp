#pragma once

// Exact scalars: rationals and lexicographically ordered rational tuples.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isocone {

using Rat = mpq_class;

std::string to_string(const Rat& q);

// Accepts "p" or "p/q" with optional leading '-'. When the input is not in
// lowest terms (or has a negative denominator) the value is normalized and
// *normalized is set.
Rat parse_rat(std::string_view text, bool* normalized = nullptr);

enum class Ordering { Less, Equal, Greater };

const char* to_string(Ordering o);

// An element of Q^n under the lexicographic order. The rank n is part of the
// value; arithmetic and comparison between different ranks throw
// DomainError("dimension").
class LexVec {
public:
    LexVec() = default;
    explicit LexVec(std::size_t rank) : c_(rank) {}
    explicit LexVec(std::vector<Rat> coords) : c_(std::move(coords)) {}
    LexVec(std::initializer_list<Rat> coords) : c_(coords) {}

    std::size_t rank() const { return c_.size(); }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    Rat& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const;
    // -1, 0 or +1: the sign of the first nonzero coordinate.
    int sign() const;

    LexVec& operator+=(const LexVec& o);
    LexVec& operator-=(const LexVec& o);
    LexVec& operator*=(const Rat& s);

    friend LexVec operator+(LexVec a, const LexVec& b) { return a += b; }
    friend LexVec operator-(LexVec a, const LexVec& b) { return a -= b; }
    friend LexVec operator*(LexVec a, const Rat& s) { return a *= s; }
    friend LexVec operator*(const Rat& s, LexVec a) { return a *= s; }
    LexVec operator-() const;

    friend bool operator==(const LexVec& a, const LexVec& b);
    friend std::strong_ordering operator<=>(const LexVec& a, const LexVec& b);

private:
    std::vector<Rat> c_;
};

Ordering lex_cmp(const LexVec& a, const LexVec& b);

// 1-based index of the first nonzero coordinate; nullopt for zero. A smaller
// index means an infinitely larger element.
std::optional<std::size_t> archimedean_class(const LexVec& a);

// (0, ..., 0, t) of rank n.
LexVec embed_last(const Rat& t, std::size_t n);

LexVec abs(const LexVec& x);

// x -> x_k / a_k where k is the first positive coordinate of a.
struct LeftInverse {
    std::size_t k = 0;   // 0-based coordinate index
    Rat scale;           // 1 / a_k

    Rat operator()(const LexVec& x) const;
};

LeftInverse left_inverse(const LexVec& a);

std::string to_string(const LexVec& x);

// "(p1,p2,...)"; a bare rational is accepted as a rank-1 vector.
LexVec parse_lexvec(std::string_view text, bool* normalized = nullptr);

} // namespace isocone
