#include "isocone/ordgroup.hpp"

#include "isocone/error.hpp"

#include <cctype>

namespace isocone {

namespace {

void require_same_rank(const LexVec& a, const LexVec& b)
{
    if (a.rank() != b.rank())
        throw DomainError("dimension", "rank " + std::to_string(a.rank()) + " vs rank "
                                           + std::to_string(b.rank()));
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool is_integer_text(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            return false;
    return true;
}

} // namespace

std::string to_string(const Rat& q)
{
    return q.get_str();
}

Rat parse_rat(std::string_view text, bool* normalized)
{
    text = trim(text);
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den))
        throw ParseError(0, "not a rational: '" + std::string(text) + "'");
    if (num.front() == '+')
        num.remove_prefix(1);
    if (den.front() == '+')
        den.remove_prefix(1);
    const mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0)
        throw ParseError(0, "zero denominator: '" + std::string(text) + "'");
    Rat q(n, d);
    q.canonicalize();
    if (normalized && (q.get_num() != n || q.get_den() != d))
        *normalized = true;
    return q;
}

const char* to_string(Ordering o)
{
    switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
    }
    return "?";
}

bool LexVec::is_zero() const
{
    for (const Rat& x : c_)
        if (x != 0)
            return false;
    return true;
}

int LexVec::sign() const
{
    for (const Rat& x : c_)
        if (x != 0)
            return sgn(x);
    return 0;
}

LexVec& LexVec::operator+=(const LexVec& o)
{
    require_same_rank(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i)
        c_[i] += o.c_[i];
    return *this;
}

LexVec& LexVec::operator-=(const LexVec& o)
{
    require_same_rank(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i)
        c_[i] -= o.c_[i];
    return *this;
}

LexVec& LexVec::operator*=(const Rat& s)
{
    for (Rat& x : c_)
        x *= s;
    return *this;
}

LexVec LexVec::operator-() const
{
    LexVec r(*this);
    for (Rat& x : r.c_)
        x = -x;
    return r;
}

bool operator==(const LexVec& a, const LexVec& b)
{
    return lex_cmp(a, b) == Ordering::Equal;
}

std::strong_ordering operator<=>(const LexVec& a, const LexVec& b)
{
    switch (lex_cmp(a, b)) {
    case Ordering::Less: return std::strong_ordering::less;
    case Ordering::Greater: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
    }
}

Ordering lex_cmp(const LexVec& a, const LexVec& b)
{
    require_same_rank(a, b);
    for (std::size_t i = 0; i < a.rank(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c < 0)
            return Ordering::Less;
        if (c > 0)
            return Ordering::Greater;
    }
    return Ordering::Equal;
}

std::optional<std::size_t> archimedean_class(const LexVec& a)
{
    for (std::size_t i = 0; i < a.rank(); ++i)
        if (a[i] != 0)
            return i + 1;
    return std::nullopt;
}

LexVec embed_last(const Rat& t, std::size_t n)
{
    if (n == 0)
        throw DomainError("dimension", "embed_last needs rank >= 1");
    LexVec v(n);
    v[n - 1] = t;
    return v;
}

LexVec abs(const LexVec& x)
{
    return x.sign() < 0 ? -x : x;
}

Rat LeftInverse::operator()(const LexVec& x) const
{
    if (k >= x.rank())
        throw DomainError("dimension", "functional reads coordinate " + std::to_string(k + 1)
                                           + " of a rank " + std::to_string(x.rank()) + " vector");
    return x[k] * scale;
}

LeftInverse left_inverse(const LexVec& a)
{
    if (a.sign() <= 0)
        throw DomainError("not-positive", "left_inverse needs a > 0, got " + to_string(a));
    for (std::size_t i = 0; i < a.rank(); ++i)
        if (a[i] > 0)
            return LeftInverse{i, Rat(1) / a[i]};
    throw DomainError("not-positive", to_string(a));
}

std::string to_string(const LexVec& x)
{
    std::string s = "(";
    for (std::size_t i = 0; i < x.rank(); ++i) {
        if (i)
            s += ',';
        s += to_string(x[i]);
    }
    return s + ")";
}

LexVec parse_lexvec(std::string_view text, bool* normalized)
{
    text = trim(text);
    if (text.empty())
        throw ParseError(0, "empty vector");
    if (text.front() != '(') {
        return LexVec{parse_rat(text, normalized)};
    }
    if (text.back() != ')')
        throw ParseError(0, "unterminated vector: '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
    std::vector<Rat> coords;
    while (true) {
        auto comma = text.find(',');
        coords.push_back(parse_rat(text.substr(0, comma), normalized));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return LexVec(std::move(coords));
}

} // namespace isocone
