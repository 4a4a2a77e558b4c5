#include "rsm/arith.hpp"

#include <numeric>
#include <stdexcept>

namespace rsm::arith {

namespace {

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = reduce(base, m);
    while (exp > 0) {
        if (exp & 1) {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

std::int64_t primitive_root_odd_prime_power(std::int64_t p, int e) {
    const auto fac = factorize(p - 1);
    std::int64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto [l, unused] : fac) {
            if (pow_mod(g, (p - 1) / l, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            break;
        }
    }
    if (e >= 2 && pow_mod(g, p - 1, p * p) == 1) {
        g += p;
    }
    return g;
}

}

/// Structure of (Z/q)* as a product of cyclic factors with discrete-log tables.
class CharacterGroup {
public:
    struct Component {
        std::int64_t p = 0;
        int e = 0;
        std::int64_t pe = 1;
        std::vector<std::int64_t> orders;                 // one entry per generator
        std::vector<std::vector<std::int64_t>> dlog;      // dlog[g][n mod pe], -1 for non-units
    };

    explicit CharacterGroup(std::int64_t q) : q_(q) {
        for (auto [p, e] : factorize(q)) {
            Component c;
            c.p = p;
            c.e = e;
            for (int i = 0; i < e; ++i) {
                c.pe *= p;
            }
            if (p == 2) {
                build_two_power(c);
            } else {
                build_odd(c);
            }
            components_.push_back(std::move(c));
        }
        exponent_ = 1;
        for (const auto& c : components_) {
            for (auto o : c.orders) {
                exponent_ = std::lcm(exponent_, o);
                generator_orders_.push_back(o);
            }
        }
    }

    std::int64_t modulus() const { return q_; }
    const std::vector<Component>& components() const { return components_; }
    const std::vector<std::int64_t>& generator_orders() const { return generator_orders_; }

    cplx evaluate(const std::vector<std::int64_t>& exponents, std::int64_t n) const {
        if (std::gcd(reduce(n, q_), q_) != 1) {
            return {0.0, 0.0};
        }
        std::int64_t total = 0;
        std::size_t gi = 0;
        for (const auto& c : components_) {
            const auto r = static_cast<std::size_t>(reduce(n, c.pe));
            for (std::size_t j = 0; j < c.orders.size(); ++j, ++gi) {
                const std::int64_t scale = exponent_ / c.orders[j];
                total = (total + exponents[gi] * c.dlog[j][r] % c.orders[j] * scale) % exponent_;
            }
        }
        return unit_root(total, exponent_);
    }

    bool primitive(const std::vector<std::int64_t>& exponents) const {
        std::size_t gi = 0;
        for (const auto& c : components_) {
            bool ok;
            if (c.p == 2) {
                if (c.e == 1) {
                    ok = false;
                } else if (c.e == 2) {
                    ok = exponents[gi] == 1;
                } else {
                    ok = exponents[gi + 1] % 2 == 1;
                }
            } else if (c.e == 1) {
                ok = exponents[gi] != 0;
            } else {
                ok = exponents[gi] % c.p != 0;
            }
            if (!ok) {
                return false;
            }
            gi += c.orders.size();
        }
        return true;
    }

private:
    static void build_odd(Component& c) {
        const std::int64_t order = c.pe / c.p * (c.p - 1);
        const std::int64_t g = primitive_root_odd_prime_power(c.p, c.e);
        std::vector<std::int64_t> table(static_cast<std::size_t>(c.pe), -1);
        std::int64_t cur = 1;
        for (std::int64_t k = 0; k < order; ++k) {
            table[static_cast<std::size_t>(cur)] = k;
            cur = cur * g % c.pe;
        }
        c.orders = {order};
        c.dlog = {std::move(table)};
    }

    static void build_two_power(Component& c) {
        if (c.e == 1) {
            return;   // (Z/2)* is trivial
        }
        if (c.e == 2) {
            c.orders = {2};
            c.dlog = {{-1, 0, -1, 1}};
            return;
        }
        const std::int64_t half = c.pe / 4;   // order of 5
        std::vector<std::int64_t> sign(static_cast<std::size_t>(c.pe), -1), five(static_cast<std::size_t>(c.pe), -1);
        std::int64_t cur = 1;
        for (std::int64_t t = 0; t < half; ++t) {
            sign[static_cast<std::size_t>(cur)] = 0;
            five[static_cast<std::size_t>(cur)] = t;
            const std::int64_t neg = c.pe - cur;
            sign[static_cast<std::size_t>(neg)] = 1;
            five[static_cast<std::size_t>(neg)] = t;
            cur = cur * 5 % c.pe;
        }
        c.orders = {2, half};
        c.dlog = {std::move(sign), std::move(five)};
    }

    std::int64_t q_;
    std::vector<Component> components_;
    std::vector<std::int64_t> generator_orders_;
    std::int64_t exponent_ = 1;
};

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::int64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
    const auto& orders = group_->generator_orders();
    if (exponents_.size() != orders.size()) {
        throw std::invalid_argument("DirichletCharacter: exponent vector has the wrong length");
    }
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (exponents_[i] < 0 || exponents_[i] >= orders[i]) {
            throw std::invalid_argument("DirichletCharacter: exponent out of range");
        }
    }
    primitive_ = group_->primitive(exponents_);
}

std::int64_t DirichletCharacter::modulus() const {
    return group_->modulus();
}

cplx DirichletCharacter::operator()(std::int64_t n) const {
    return group_->evaluate(exponents_, n);
}

std::vector<cplx> DirichletCharacter::values() const {
    const std::int64_t q = modulus();
    std::vector<cplx> out(static_cast<std::size_t>(q));
    for (std::int64_t n = 0; n < q; ++n) {
        out[static_cast<std::size_t>(n)] = (*this)(n);
    }
    return out;
}

std::vector<DirichletCharacter> dirichlet_characters(std::int64_t q, std::int64_t max_modulus) {
    if (q < 1 || q > max_modulus) {
        throw std::invalid_argument("dirichlet_characters: modulus outside the configured range");
    }
    auto group = std::make_shared<const CharacterGroup>(q);
    const auto& orders = group->generator_orders();

    std::vector<DirichletCharacter> out;
    std::vector<std::int64_t> exps(orders.size(), 0);
    for (;;) {
        out.emplace_back(group, exps);
        std::size_t i = 0;
        for (; i < exps.size(); ++i) {
            if (++exps[i] < orders[i]) {
                break;
            }
            exps[i] = 0;
        }
        if (i == exps.size()) {
            break;
        }
    }
    return out;
}

bool is_primitive_by_descent(const DirichletCharacter& chi) {
    const std::int64_t q = chi.modulus();
    for (auto [p, e] : factorize(q)) {
        const std::int64_t d = q / p;
        bool trivial = true;
        for (std::int64_t n = 1; n < q && trivial; n += d) {
            if (std::gcd(n, q) != 1) {
                continue;
            }
            if (std::abs(chi(n) - cplx{1.0, 0.0}) > 1e-9) {
                trivial = false;
            }
        }
        if (trivial) {
            return false;
        }
    }
    return true;
}

}
