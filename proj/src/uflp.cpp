#include "beecol/uflp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

namespace beecol::problems {

namespace {

struct Token {
    std::string text;
    std::size_t line = 0;  // 1-based
    std::size_t column = 0;
};

// Whitespace-splitting tokenizer that remembers where each token started, so
// parse errors can name the spot.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) {
        std::size_t line = 1;
        std::size_t column = 0;
        std::string current;
        std::size_t tok_line = 0, tok_column = 0;
        char c;
        while (in.get(c)) {
            ++column;
            if (c == '\n') {
                flush(current, tok_line, tok_column);
                ++line;
                column = 0;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                flush(current, tok_line, tok_column);
            } else {
                if (current.empty()) {
                    tok_line = line;
                    tok_column = column;
                }
                current.push_back(c);
            }
        }
        flush(current, tok_line, tok_column);
        last_line_ = line;
    }

    bool done() const noexcept { return next_ >= tokens_.size(); }

    const Token& next(const char* what) {
        if (done()) {
            std::ostringstream msg;
            msg << "unexpected end of input at line " << last_line_ << ": expected " << what;
            throw ParseError(msg.str());
        }
        return tokens_[next_++];
    }

    const Token& peek_last() const { return tokens_[next_ - 1]; }
    const Token& peek() const { return tokens_[next_]; }

private:
    void flush(std::string& current, std::size_t line, std::size_t column) {
        if (!current.empty()) {
            tokens_.push_back(Token{std::move(current), line, column});
            current.clear();
        }
    }

    std::vector<Token> tokens_;
    std::size_t next_ = 0;
    std::size_t last_line_ = 1;
};

[[noreturn]] void fail_token(const Token& tok, const char* what) {
    std::ostringstream msg;
    msg << "line " << tok.line << ", position " << tok.column << ": expected " << what
        << ", got \"" << tok.text << "\"";
    throw ParseError(msg.str());
}

double parse_number(const Token& tok, const char* what) {
    double value = 0.0;
    const char* begin = tok.text.data();
    const char* end = begin + tok.text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) fail_token(tok, what);
    return value;
}

std::size_t parse_count(const Token& tok, const char* what) {
    const double value = parse_number(tok, what);
    if (!(value >= 1.0) || value != std::floor(value)) fail_token(tok, what);
    return static_cast<std::size_t>(value);
}

}  // namespace

UflpInstance::UflpInstance(std::string name, std::size_t facilities, std::size_t customers,
                           std::vector<double> setup, std::vector<double> ship_by_customer,
                           std::optional<double> optimum)
    : name_(std::move(name)),
      m_(facilities),
      n_(customers),
      setup_(std::move(setup)),
      ship_(std::move(ship_by_customer)),
      optimum_(optimum) {
    if (m_ == 0 || n_ == 0)
        throw std::invalid_argument("UflpInstance: need at least one facility and customer");
    if (setup_.size() != m_)
        throw std::invalid_argument("UflpInstance: setup cost count does not match m");
    if (ship_.size() != m_ * n_)
        throw std::invalid_argument("UflpInstance: shipment matrix size does not match m x n");
    for (double f : setup_)
        if (!std::isfinite(f) || f < 0.0)
            throw std::invalid_argument("UflpInstance: setup costs must be finite and >= 0");
    for (double s : ship_)
        if (!std::isfinite(s) || s < 0.0)
            throw std::invalid_argument("UflpInstance: shipment costs must be finite and >= 0");

    // Cheapest-first facility ranking per customer; ties stay in index order
    // so the lowest-index rule falls out of the scan.
    rank_.resize(m_ * n_);
    for (std::size_t j = 0; j < n_; ++j) {
        std::uint32_t* row = &rank_[j * m_];
        std::iota(row, row + m_, 0u);
        const double* costs = &ship_[j * m_];
        std::stable_sort(row, row + m_, [costs](std::uint32_t a, std::uint32_t b) {
            return costs[a] < costs[b];
        });
    }
}

UflpInstance parse_orlib(std::istream& in, std::string name, std::optional<double> optimum) {
    TokenReader reader(in);

    const std::size_t m = parse_count(reader.next("facility count"), "facility count");
    const std::size_t n = parse_count(reader.next("customer count"), "customer count");

    std::vector<double> setup;
    setup.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        // Capacity slot: a number or the literal word "capacity"; ignored.
        const Token& cap = reader.next("capacity");
        if (cap.text != "capacity") parse_number(cap, "capacity value or the word \"capacity\"");
        setup.push_back(parse_number(reader.next("fixed cost"), "fixed cost"));
    }

    std::vector<double> ship(m * n);
    for (std::size_t j = 0; j < n; ++j) {
        parse_number(reader.next("customer demand"), "customer demand");  // ignored
        for (std::size_t i = 0; i < m; ++i)
            ship[j * m + i] = parse_number(reader.next("shipment cost"), "shipment cost");
    }

    if (!reader.done()) fail_token(reader.peek(), "end of input");

    return UflpInstance(std::move(name), m, n, std::move(setup), std::move(ship), optimum);
}

void write_orlib(const UflpInstance& inst, std::ostream& out) {
    const std::streamsize prec = out.precision();
    out.precision(17);
    out << inst.facility_count() << ' ' << inst.customer_count() << '\n';
    for (std::size_t i = 0; i < inst.facility_count(); ++i)
        out << "capacity " << inst.setup(i) << '\n';
    for (std::size_t j = 0; j < inst.customer_count(); ++j) {
        out << 0 << '\n';
        for (std::size_t i = 0; i < inst.facility_count(); ++i)
            out << inst.ship(i, j) << (i + 1 == inst.facility_count() ? '\n' : ' ');
    }
    out.precision(prec);
}

Evaluation evaluate_uflp(const UflpInstance& inst, const BitVector& x) {
    const std::size_t m = inst.facility_count();
    if (x.size() != m)
        throw std::invalid_argument("evaluate_uflp: vector length does not match facility count");
    const std::span<const std::uint8_t> open = x.bits();

    Evaluation result;
    double cost = 0.0;
    bool any_open = false;
    for (std::size_t i = 0; i < m; ++i) {
        if (open[i]) {
            cost += inst.setup(i);
            any_open = true;
        }
    }
    if (!any_open) throw std::domain_error("evaluate_uflp: no open facility");

    const std::size_t n = inst.customer_count();
    result.assignment.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint32_t* ranked = inst.ranked(j);
        std::uint32_t chosen = 0;
        for (std::size_t k = 0;; ++k) {  // at least one facility is open
            if (open[ranked[k]]) {
                chosen = ranked[k];
                break;
            }
        }
        result.assignment[j] = chosen;
        cost += inst.ship(chosen, j);
    }
    result.cost = cost;
    return result;
}

BitVector repair_all_closed(const UflpInstance& inst, const BitVector& x) {
    const std::size_t m = inst.facility_count();
    std::vector<double> total(m);
    for (std::size_t i = 0; i < m; ++i) total[i] = inst.setup(i);
    for (std::size_t j = 0; j < inst.customer_count(); ++j)
        for (std::size_t i = 0; i < m; ++i) total[i] += inst.ship(i, j);

    std::size_t cheapest = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (total[i] < total[cheapest]) cheapest = i;

    BitVector repaired(x.size());
    repaired.set(cheapest, true);
    return repaired;
}

const std::map<std::string, double>& optima_registry() {
    static const std::map<std::string, double> registry = {
        {"cap71", 932615.75},    {"cap72", 977799.40},    {"cap73", 1010641.45},
        {"cap74", 1034976.98},   {"cap101", 796648.44},   {"cap102", 854704.20},
        {"cap103", 893782.11},   {"cap104", 928941.75},   {"cap131", 793439.56},
        {"cap132", 851495.33},   {"cap133", 893076.71},   {"cap134", 928941.75},
        {"capa", 17156454.48},   {"capb", 12979071.58},   {"capc", 11505594.33},
    };
    return registry;
}

UflpProblem::UflpProblem(std::shared_ptr<const UflpInstance> inst) : inst_(std::move(inst)) {
    if (!inst_) throw std::invalid_argument("UflpProblem: null instance");
}

bool UflpProblem::repair(BitVector& x) const {
    if (x.any()) return false;
    x = repair_all_closed(*inst_, x);
    return true;
}

}  // namespace beecol::problems
