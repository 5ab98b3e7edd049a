#include "weil/character.hpp"

#include "weil/arith.hpp"
#include "weil/errors.hpp"

#include <numeric>
#include <sstream>

namespace weil
{

std::vector<DirichletCharacter::Generator> DirichletCharacter::generators(int64_t q)
{
    WEIL_REQUIRE(q >= 1, ContractViolation, "character modulus must be positive");
    std::vector<Generator> out;
    auto lift = [q](int64_t g, int64_t pe) {
        // g mod pe, 1 mod q / pe
        const int64_t rest = q / pe;
        if (rest == 1)
            return mod(g, q);
        const int64_t t = mod((g - 1) % pe * inverse_mod(rest, pe), pe);
        return mod(1 + rest * t, q);
    };
    for (auto [p, e] : factorize(q)) {
        const int64_t pe = ipow(p, e);
        if (p == 2) {
            if (e == 2)
                out.push_back({lift(-1, pe), 2});
            else if (e >= 3) {
                out.push_back({lift(-1, pe), 2});
                out.push_back({lift(5, pe), pe / 4});
            }
        } else {
            out.push_back({lift(smallest_primitive_root(p, e), pe), pe / p * (p - 1)});
        }
    }
    return out;
}

DirichletCharacter::DirichletCharacter() { build(); }

DirichletCharacter::DirichletCharacter(int64_t modulus, std::vector<int64_t> exponents)
    : modulus_(modulus), exponents_(std::move(exponents))
{
    build();
}

void DirichletCharacter::build()
{
    gens_ = generators(modulus_);
    WEIL_REQUIRE(exponents_.size() == gens_.size(), ContractViolation,
                 "character mod " + std::to_string(modulus_) + " needs " + std::to_string(gens_.size()) + " exponents");
    order_ = 1;
    for (size_t i = 0; i < gens_.size(); ++i) {
        exponents_[i] = mod(exponents_[i], gens_[i].order);
        order_ = std::lcm(order_, gens_[i].order / std::gcd(exponents_[i], gens_[i].order));
    }
    table_.assign(static_cast<size_t>(modulus_), -1);
    // walk the group as a product of cyclic factors
    std::vector<int64_t> counter(gens_.size(), 0);
    int64_t element = 1 % modulus_, idx = 0;
    while (true) {
        table_[static_cast<size_t>(element)] = idx;
        size_t i = 0;
        for (; i < gens_.size(); ++i) {
            const int64_t step = exponents_[i] * order_ / gens_[i].order;
            if (++counter[i] < gens_[i].order) {
                element = static_cast<int64_t>(static_cast<__int128>(element) * gens_[i].value % modulus_);
                idx = mod(idx + step, order_);
                break;
            }
            // wrap this digit: element * g^{-(ord-1)} = element * g
            counter[i] = 0;
            element = static_cast<int64_t>(static_cast<__int128>(element) * gens_[i].value % modulus_);
            idx = mod(idx + step, order_);
        }
        if (i == gens_.size())
            break;
    }
    if (modulus_ == 1)
        table_[0] = 0;
}

DirichletCharacter DirichletCharacter::trivial(int64_t modulus)
{
    return DirichletCharacter(modulus, std::vector<int64_t>(generators(modulus).size(), 0));
}

std::vector<DirichletCharacter> DirichletCharacter::all(int64_t modulus)
{
    const auto gens = generators(modulus);
    std::vector<DirichletCharacter> out;
    std::vector<int64_t> e(gens.size(), 0);
    while (true) {
        out.emplace_back(modulus, e);
        size_t i = 0;
        for (; i < gens.size(); ++i) {
            if (++e[i] < gens[i].order)
                break;
            e[i] = 0;
        }
        if (i == gens.size())
            break;
    }
    return out;
}

DirichletCharacter DirichletCharacter::from_angles(int64_t modulus, const std::function<Rational(int64_t)>& angle)
{
    const auto gens = generators(modulus);
    std::vector<int64_t> e(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        Rational t = frac(angle(gens[i].value)) * static_cast<long>(gens[i].order);
        WEIL_REQUIRE(is_integer(t), InvariantViolation, "character value is not a root of the generator order");
        e[i] = to_int64(t.get_num());
    }
    return DirichletCharacter(modulus, e);
}

DirichletCharacter DirichletCharacter::kronecker(int64_t D0)
{
    WEIL_REQUIRE(is_fundamental_discriminant(D0), InvalidDiscriminant,
                 "not a fundamental discriminant: " + std::to_string(D0));
    const int64_t q = D0 < 0 ? -D0 : D0;
    return from_angles(q, [D0](int64_t n) { return weil::kronecker(D0, n) == 1 ? Rational(0) : Rational(1, 2); });
}

DirichletCharacter DirichletCharacter::parse(const std::string& label)
{
    auto colon = label.find(':');
    WEIL_REQUIRE(colon != std::string::npos, std::invalid_argument, "character label must look like q:[e1,...]");
    int64_t q = 0;
    std::vector<int64_t> e;
    try {
        q = std::stoll(label.substr(0, colon));
        std::string rest = label.substr(colon + 1);
        WEIL_REQUIRE(rest.size() >= 2 && rest.front() == '[' && rest.back() == ']', std::invalid_argument,
                     "character exponents must be bracketed");
        std::stringstream ss(rest.substr(1, rest.size() - 2));
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (tok.find_first_not_of(" \t") != std::string::npos)
                e.push_back(std::stoll(tok));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad character label '" + label + "'");
    }
    WEIL_REQUIRE(q >= 1, std::invalid_argument, "character modulus must be positive");
    try {
        return DirichletCharacter(q, e);
    } catch (const ContractViolation& err) {
        throw std::invalid_argument(err.what());
    }
}

std::string DirichletCharacter::label() const
{
    std::string out = std::to_string(modulus_) + ":[";
    for (size_t i = 0; i < exponents_.size(); ++i)
        out += (i ? "," : "") + std::to_string(exponents_[i]);
    return out + "]";
}

std::optional<int64_t> DirichletCharacter::index(int64_t n) const
{
    const int64_t v = table_[static_cast<size_t>(mod(n, modulus_))];
    if (v < 0)
        return std::nullopt;
    return v;
}

std::optional<Rational> DirichletCharacter::angle(int64_t n) const
{
    auto i = index(n);
    if (!i)
        return std::nullopt;
    return make_rational(*i, order_);
}

CycNumber DirichletCharacter::operator()(int64_t n) const
{
    auto i = index(n);
    return i ? CycNumber::root_of_unity(order_, *i) : CycNumber();
}

CycNumber DirichletCharacter::conj_value(int64_t n) const
{
    auto i = index(n);
    return i ? CycNumber::root_of_unity(order_, -*i) : CycNumber();
}

bool DirichletCharacter::is_even() const { return *index(-1) == 0; }

int64_t DirichletCharacter::conductor() const
{
    for (int64_t d : divisors(modulus_)) {
        bool ok = true;
        for (int64_t n = 1 + d; n < modulus_ && ok; n += d)
            if (auto i = index(n); i && *i != 0)
                ok = false;
        if (ok)
            return d;
    }
    return modulus_;
}

namespace
{
// some n' = n mod d that is a unit mod q
int64_t unit_lift(int64_t n, int64_t d, int64_t q)
{
    for (int64_t t = mod(n, d); t < q + d * q; t += d)
        if (std::gcd(t, q) == 1)
            return t;
    throw InvariantViolation("no unit lift");
}
} // namespace

DirichletCharacter DirichletCharacter::primitive_part() const
{
    const int64_t f = conductor();
    if (f == modulus_)
        return *this;
    return from_angles(f, [&](int64_t n) { return *angle(unit_lift(n, f, modulus_)); });
}

DirichletCharacter DirichletCharacter::induce(int64_t modulus) const
{
    WEIL_REQUIRE(modulus % modulus_ == 0, ContractViolation, "induced modulus must be a multiple");
    return from_angles(modulus, [&](int64_t n) { return *angle(n); });
}

std::pair<DirichletCharacter, DirichletCharacter> DirichletCharacter::factor(int64_t q1, int64_t q2) const
{
    WEIL_REQUIRE(q1 >= 1 && q2 >= 1 && q1 * q2 == modulus_ && std::gcd(q1, q2) == 1, ContractViolation,
                 "factor_character needs a coprime factorization of the modulus");
    auto crt = [&](int64_t n, int64_t qa, int64_t qb) {
        // n mod qa, 1 mod qb
        const int64_t t = mod((n - 1) % qa * inverse_mod(qb, qa), qa);
        return mod(1 + qb * t, modulus_);
    };
    auto c1 = from_angles(q1, [&](int64_t n) { return *angle(crt(n, q1, q2)); });
    auto c2 = from_angles(q2, [&](int64_t n) { return *angle(crt(n, q2, q1)); });
    return {c1, c2};
}

DirichletCharacter DirichletCharacter::pow(int64_t a) const
{
    std::vector<int64_t> e = exponents_;
    for (auto& x : e)
        x *= a;
    return DirichletCharacter(modulus_, e);
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b)
{
    const int64_t q = std::lcm(a.modulus_, b.modulus_);
    return DirichletCharacter::from_angles(q, [&](int64_t n) -> Rational { return *a.angle(n) + *b.angle(n); });
}

CycNumber gauss_sum(const DirichletCharacter& chi)
{
    const int64_t q = chi.modulus(), ord = chi.order();
    const int64_t L = std::lcm(q, ord);
    std::vector<int64_t> counts(static_cast<size_t>(L), 0);
    for (int64_t u = 0; u < q; ++u)
        if (auto i = chi.index(u))
            counts[static_cast<size_t>(mod(u * (L / q) + *i * (L / ord), L))] += 1;
    return CycNumber::from_counts(L, counts);
}

CycNumber jacobi_sum(const DirichletCharacter& chi1, const DirichletCharacter& chi2)
{
    WEIL_REQUIRE(chi1.modulus() == chi2.modulus(), ContractViolation, "Jacobi sum needs a common modulus");
    const int64_t q = chi1.modulus();
    const int64_t L = std::lcm(chi1.order(), chi2.order());
    std::vector<int64_t> counts(static_cast<size_t>(L), 0);
    for (int64_t a = 0; a < q; ++a) {
        auto i = chi1.index(a), j = chi2.index(1 - a);
        if (i && j)
            counts[static_cast<size_t>(mod(*i * (L / chi1.order()) + *j * (L / chi2.order()), L))] += 1;
    }
    return CycNumber::from_counts(L, counts);
}

} // namespace weil
