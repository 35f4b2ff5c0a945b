#include <cctype>

#include "knotss/confcoh.hpp"

namespace knotss {

namespace {

class Parser {
public:
    Parser(std::string_view s, int p, Field f) : s_(s), p_(p), f_(f) {}

    CohClass run() {
        struct Term {
            long coef;
            Monomial factors;
            std::size_t pos;
        };
        std::vector<Term> terms;
        skip();
        if (at_end()) throw ParseError("empty class expression", pos_);
        bool first = true;
        while (!at_end()) {
            long sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            first = false;
            std::size_t start = pos_;
            Term t{sign, {}, start};
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                t.coef *= number();
                skip();
                if (peek() == '*') {
                    ++pos_;
                    skip();
                    t.factors.push_back(generator());
                } else if (peek() == 'g') {
                    t.factors.push_back(generator());
                }
            } else {
                t.factors.push_back(generator());
            }
            skip();
            while (peek() == '*') {
                ++pos_;
                skip();
                t.factors.push_back(generator());
                skip();
            }
            terms.push_back(std::move(t));
        }
        int q = static_cast<int>(terms[0].factors.size());
        for (const auto& t : terms)
            if (static_cast<int>(t.factors.size()) != q)
                throw PreconditionError("mixed degrees in class expression (term at position " +
                                        std::to_string(t.pos) + ")");
        CohClass out(p_, q, f_);
        for (const auto& t : terms) out.add_factors(t.factors, Scalar(f_, t.coef));
        return out;
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    long number() {
        std::size_t start = pos_;
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000000L) throw ParseError("integer too large", start);
            ++pos_;
        }
        if (pos_ == start) throw ParseError("expected integer", pos_);
        return v;
    }
    Gen generator() {
        std::size_t start = pos_;
        if (peek() != 'g') throw ParseError("expected generator 'g'", pos_);
        ++pos_;
        Gen g;
        if (peek() == '(') {
            ++pos_;
            skip();
            g.i = static_cast<int>(number());
            skip();
            if (peek() != ',') throw ParseError("expected ','", pos_);
            ++pos_;
            skip();
            g.j = static_cast<int>(number());
            skip();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
        } else {
            if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected digit", pos_);
            g.i = s_[pos_++] - '0';
            if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected digit", pos_);
            g.j = s_[pos_++] - '0';
        }
        if (g.i < 1 || g.i >= g.j)
            throw ParseError("generator needs 1 <= i < j", start);
        if (g.j > p_)
            throw PreconditionError("generator index " + std::to_string(g.j) + " exceeds arity " +
                                    std::to_string(p_) + " (position " + std::to_string(start) + ")");
        return g;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int p_;
    Field f_;
};

}  // namespace

CohClass parse_class(std::string_view text, int p, Field f) { return Parser(text, p, f).run(); }

}  // namespace knotss
