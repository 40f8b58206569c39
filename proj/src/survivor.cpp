#include "betaflow/survivor.hpp"

#include "betaflow/word_automaton.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace betaflow {

HoleSpec in_bifurcation_set(const Params& params, const Scalar& t, size_t depth) {
    HoleSpec h{params, t, std::nullopt, FiniteWord(), TriState::Unknown, 0, depth};
    if (t.sign() == Sign::Negative || t >= Scalar(1))
        throw Error(ErrorCode::BadInput, "hole parameter must lie in [0, 1)");
    if (t.sign() == Sign::Zero) {
        // [0, 0) is empty; tau^+(0) still gets computed for the record.
        Expansion e = expansion(params, t, Variant::Upper, depth);
        h.t_word = e.word;
        h.t_prefix = e.prefix;
        h.in_E_plus = TriState::Yes;
        return h;
    }
    bool exact = t.is_exact() && params.exact();
    // Membership follows the quasi-greedy orbit: the lower branch keeps
    // boundary orbits that pass through p alive (p maps to 1, not to 0).
    Orbit orb = compute_orbit(params, t, Variant::Lower, depth);
    h.t_prefix = orb.letters;
    for (size_t n = 1; n < orb.points.size(); ++n) {
        if ((orb.points[n] - t).sign() == Sign::Negative) {
            h.in_E_plus = TriState::No;
            h.escape_step = n;
            return h;
        }
    }
    if (exact && orb.cycle) {
        h.in_E_plus = TriState::Yes;
        return h;
    }
    h.in_E_plus = TriState::Unknown;
    return h;
}

HoleSpec make_hole(const Params& params, const Scalar& t, size_t depth) {
    HoleSpec h = in_bifurcation_set(params, t, depth);
    // The survivor-set bound is the upper expansion of t.
    Expansion e = expansion(params, t, Variant::Upper, depth);
    h.t_word = e.word;
    h.t_prefix = e.prefix;
    return h;
}

namespace {

const EPWord& hole_word(const HoleSpec& hole) {
    if (!hole.t_word)
        throw Error(ErrorCode::NoPeriodWithinBudget, "hole expansion not certified");
    return *hole.t_word;
}

EPWord tau_minus_one(const Params& params, size_t budget = 4096) {
    return expansion(params, Scalar(1), Variant::Lower, budget).certified();
}

}  // namespace

bool survivor_member(const Params& params, const HoleSpec& hole, const EPWord& w) {
    const EPWord& low = hole_word(hole);
    EPWord high = tau_minus_one(params);
    for (size_t n = 0; n < w.distinct_shifts(); ++n) {
        EPWord s = shift(w, n);
        if (!(lex_le(low, s) && lex_lt(s, high))) return false;
    }
    return true;
}

Int count_survivor_words(const Params& params, const HoleSpec& hole, size_t n) {
    WordAutomaton aut(WordAutomaton::uniform(hole_word(hole), tau_minus_one(params)));
    return aut.count_words(n).back();
}

std::optional<PlateauPoint> bifurcation_successor(const Params& params, const Scalar& t,
                                                  size_t lyndon_bound, size_t max_jumps) {
    Scalar cur = t;
    size_t budget = std::max<size_t>(4 * lyndon_bound, 256);
    for (size_t jump = 0; jump <= max_jumps; ++jump) {
        if (!(cur < Scalar(1))) return std::nullopt;
        HoleSpec h = in_bifurcation_set(params, cur, budget);
        if (h.in_E_plus == TriState::Yes) {
            // The plateau representative is the quasi-greedy word of t*.
            EPWord w = expansion(params, cur, Variant::Lower, budget).certified();
            return PlateauPoint{cur, w, jump};
        }
        // Find the first word-escape: sigma^n(u) < u within the available
        // letters; the escaping prefix is a Lyndon word and [pi(s 0^inf),
        // pi(s^inf)) is a gap of the bifurcation set.
        Expansion e = expansion(params, cur, Variant::Lower, budget);
        std::optional<size_t> escape;
        if (e.word) {
            for (size_t n = 1; n <= e.word->distinct_shifts() && !escape; ++n)
                if (lex_lt(shift(*e.word, n), *e.word)) escape = n;
        } else {
            size_t len = e.prefix.size();
            for (size_t n = 1; n < len && !escape; ++n) {
                for (size_t i = 0; n + i < len; ++i) {
                    uint8_t a = e.prefix[n + i], b = e.prefix[i];
                    if (a != b) {
                        if (a < b) escape = n;
                        break;
                    }
                }
            }
        }
        if (!escape || *escape > lyndon_bound) return std::nullopt;
        FiniteWord s = e.word ? e.word->prefix(*escape) : e.prefix.subword(0, *escape);
        if (!is_lyndon(s)) return std::nullopt;
        Scalar next = project_pi(params, EPWord::periodic(s));
        if (!(cur < next)) {
            // pi(s^inf) equals cur: cur sits on the gap boundary; its
            // membership was already decided No, so step just past it.
            return std::nullopt;
        }
        cur = next;
    }
    return std::nullopt;
}

Scalar critical_hole(const Params& params) {
    EPWord tau1 = tau_minus_one(params);
    if (tau1 == EPWord::parse("(10)")) {
        return (Scalar(1) - params.alpha - params.beta * params.alpha) / (params.beta * params.beta);
    }
    // Bisection on the survivor entropy: positive strictly below the
    // critical hole, zero strictly above.
    Scalar lo(0), hi = params.p;
    for (int iter = 0; iter < 48; ++iter) {
        Scalar mid = (lo + hi) / Scalar(2);
        auto plateau = bifurcation_successor(params, mid);
        bool positive = false;
        if (plateau) {
            WordAutomaton aut(WordAutomaton::uniform(plateau->word, tau1));
            positive = aut.positive_entropy();
        }
        if (positive) lo = mid; else hi = mid;
    }
    auto iv_lo = lo.enclose(64), iv_hi = hi.enclose(64);
    return Scalar(DyadicInterval(iv_lo.first, iv_hi.second, 64));
}

EtaResult eta_full(const Params& params, const Scalar& t, size_t depth, size_t lyndon_bound) {
    EtaResult r;
    double log_beta = std::log(params.beta.to_double());
    if (t.sign() == Sign::Negative || t >= Scalar(1)) throw Error(ErrorCode::BadInput, "t outside [0,1)");
    if (t >= params.p) {
        // Beyond the critical point the survivor set collapses.
        r.kneading_ok = r.counting_ok = true;
        r.eta_kneading = r.eta_counting = 0;
        r.note = "t >= (1-alpha)/beta";
        return r;
    }
    EPWord tau1 = tau_minus_one(params);
    auto plateau = bifurcation_successor(params, t, lyndon_bound);
    if (!plateau) {
        r.note = "E-PLUS-SEARCH-EXHAUSTED";
        return r;
    }
    // The plateau key is the upper expansion of t* (the survivor-set
    // bound); the quasi-greedy word backs it up at exceptional points.
    Expansion up = expansion(params, plateau->value, Variant::Upper, 4096);
    EPWord word_up = up.word ? *up.word : plateau->word;
    r.plateau = word_up.to_string();

    // Method B: window-automaton counting at the requested depth.  The
    // growth rate comes from a ratio of counts a few steps apart, which
    // cancels the polynomial factor that a plain log(c_n)/n estimate
    // carries at finite depth.
    WordAutomaton aut(WordAutomaton::uniform(word_up, tau1));
    auto counts = aut.count_words(depth);
    auto log_int = [](const Int& c) {
        if (c < (Int(1) << 52)) return std::log(c.convert_to<double>());
        size_t b = msb(c);
        return std::log((c >> (b - 52)).convert_to<double>()) + static_cast<double>(b - 52) * std::log(2.0);
    };
    size_t window = depth > 8 ? 8 : depth;
    if (counts[depth] == 0) {
        r.eta_counting = 0;
    } else if (counts[depth - window] == 0 || window == 0) {
        r.eta_counting = log_int(counts[depth]) / static_cast<double>(depth) / log_beta;
    } else {
        double growth = (log_int(counts[depth]) - log_int(counts[depth - window])) / static_cast<double>(window);
        r.eta_counting = std::max(0.0, growth) / log_beta;
    }
    r.counting_ok = true;

    // Method A.  A survivor window without exponential growth pins the
    // dimension to zero; otherwise the plateau word is realized as
    // tau^+(0) of a subsystem sharing tau^-(1), giving log(beta'')/log(beta).
    if (!aut.positive_entropy()) {
        r.eta_kneading = 0;
        r.kneading_ok = true;
        return r;
    }
    EPWord lower = prepend(0, tau1);
    std::vector<EPWord> uppers{prepend(1, word_up)};
    if (!(plateau->word == word_up)) uppers.push_back(prepend(1, plateau->word));
    PairValidity last{false, PairCondition::Cond1};
    for (const EPWord& upper : uppers) {
        last = validate_kneading_pair(lower, upper);
        if (!last.valid) continue;
        try {
            Params sub = system_from_kneading_pair_unchecked(lower, upper);
            r.eta_kneading = std::log(sub.beta.to_double()) / log_beta;
            r.kneading_ok = true;
            if (const NFElem* e = sub.beta.field_elem()) {
                r.beta2_poly = e->field->modulus().to_string();
            } else {
                r.beta2_poly = "x - " + sub.beta.to_string();
            }
            r.alpha2 = sub.alpha.to_double();
            return r;
        } catch (const Error& err) {
            r.note = err.what();
        }
    }
    if (!r.kneading_ok && last.failed == PairCondition::Cond3) {
        // Zero-entropy subsystem: the dimension vanishes.
        r.eta_kneading = 0;
        r.kneading_ok = true;
        r.note = "plateau system has zero entropy";
    } else if (!r.kneading_ok && r.note.empty()) {
        r.note = "pair invalid at condition " + std::to_string(static_cast<int>(last.failed));
    }
    return r;
}

Scalar eta(const Params& params, const Scalar& t) {
    EtaResult r = eta_full(params, t);
    if (!r.kneading_ok) throw Error(ErrorCode::EPlusSearchExhausted, r.note);
    return Scalar(DyadicInterval(Rational(r.eta_kneading), 64));
}

std::vector<SweepRow> dimension_sweep(const Params& params, size_t samples, size_t depth,
                                      const Rational& t_max, size_t threads) {
    if (samples < 2) throw Error(ErrorCode::BadInput, "need at least two samples");
    std::vector<SweepRow> rows(samples);
    std::atomic<size_t> next{0};
    size_t nthreads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min(nthreads, samples);
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= samples) return;
            Rational ti = t_max * Rational(static_cast<long>(i)) / Rational(static_cast<long>(samples - 1));
            rows[i].t = to_double(ti);
            try {
                rows[i].result = eta_full(params, Scalar(ti), depth);
            } catch (const std::exception& e) {
                rows[i].result.note = e.what();
            }
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "t,eta_kneading,eta_counting,beta2_minpoly,alpha2,plateau\n";
    os.setf(std::ios::fixed);
    os.precision(12);
    for (const auto& row : rows) {
        os << row.t << ',';
        if (row.result.kneading_ok) os << row.result.eta_kneading;
        os << ',';
        if (row.result.counting_ok) os << row.result.eta_counting;
        os << ',';
        os << '"' << row.result.beta2_poly << '"' << ',' << row.result.alpha2 << ',' << '"'
           << row.result.plateau << '"' << '\n';
    }
    return os.str();
}

}  // namespace betaflow
