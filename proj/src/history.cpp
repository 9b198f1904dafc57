#include "qgroupoid/history.hpp"

#include <algorithm>
#include <cmath>

#include "qgroupoid/error.hpp"

namespace qgroupoid {

namespace {

bool same_time(double a, double b) { return std::abs(a - b) <= kTimeTolerance * (1.0 + std::max(std::abs(a), std::abs(b))); }

std::vector<Segment> normalized(std::vector<Segment> segments) {
    std::vector<Segment> out;
    for (auto& s : segments) {
        if (s.steps.empty()) continue;
        if (!out.empty() && out.back().orientation == s.orientation) {
            out.back().steps.insert(out.back().steps.end(), s.steps.begin(), s.steps.end());
        } else {
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace

void TimeGrid::validate() const {
    if (!std::isfinite(t_start)) throw ValidationError("grid start time must be finite");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("grid step tau must be positive");
}

History History::make(GroupoidPtr groupoid, TimeGrid grid, std::vector<Segment> segments,
                      std::optional<OutcomeId> start) {
    if (!groupoid) throw ValidationError("history needs a groupoid");
    grid.validate();
    const auto& g = *groupoid;

    std::size_t total = 0;
    std::optional<OutcomeId> at = start;
    if (at && index(*at) >= g.outcome_count()) throw ValidationError("history start outcome out of range");
    for (std::size_t s = 0; s < segments.size(); ++s) {
        for (std::size_t k = 0; k < segments[s].steps.size(); ++k) {
            const auto e = segments[s].steps[k];
            if (index(e) >= g.element_count()) throw ValidationError("history step out of range");
            if (at && g.source(e) != *at) {
                throw ValidationError("segment " + std::to_string(s + 1) + ", step " + std::to_string(k + 1) + " (" +
                                      g.element_label(e) + ") starts at " + g.outcome_label(g.source(e)) +
                                      " but the history is at " + g.outcome_label(*at));
            }
            if (!at) at = g.source(e);
            at = g.target(e);
            ++total;
        }
    }
    if (total != grid.n_steps)
        throw ValidationError("history has " + std::to_string(total) + " steps but the grid has " +
                              std::to_string(grid.n_steps));

    History w;
    w.groupoid_ = std::move(groupoid);
    w.grid_ = grid;
    w.segments_ = normalized(std::move(segments));
    if (!start && w.segments_.empty()) throw ValidationError("an empty history needs an explicit start outcome");
    w.start_ = start ? *start : w.groupoid_->source(w.segments_.front().steps.front());
    w.end_ = *at;
    return w;
}

History History::future(GroupoidPtr groupoid, double t_start, double tau, std::vector<ElementId> steps) {
    const std::size_t n = steps.size();
    return make(std::move(groupoid), TimeGrid{t_start, tau, n}, {Segment{Orientation::future, std::move(steps)}});
}

History History::unit(GroupoidPtr groupoid, OutcomeId a, double t, double tau) {
    return make(std::move(groupoid), TimeGrid{t, tau, 0}, {}, a);
}

long long History::net_displacement() const noexcept {
    long long net = 0;
    for (const auto& s : segments_) net += sign(s.orientation) * static_cast<long long>(s.steps.size());
    return net;
}

double History::end_time() const noexcept { return grid_.t_start + static_cast<double>(net_displacement()) * grid_.tau; }

std::vector<std::pair<ElementId, int>> History::trace() const {
    std::vector<std::pair<ElementId, int>> out;
    out.reserve(grid_.n_steps);
    for (const auto& s : segments_)
        for (auto e : s.steps) out.emplace_back(e, sign(s.orientation));
    return out;
}

bool operator==(const History& a, const History& b) {
    return (a.groupoid_ == b.groupoid_ || *a.groupoid_ == *b.groupoid_) && a.start_ == b.start_ &&
           a.grid_.n_steps == b.grid_.n_steps && same_time(a.grid_.t_start, b.grid_.t_start) &&
           same_time(a.grid_.tau, b.grid_.tau) && a.segments_ == b.segments_;
}

History compose_histories(const History& w2, const History& w1) {
    if (!(w1.groupoid() == w2.groupoid() || *w1.groupoid() == *w2.groupoid()))
        throw GroupoidMismatchError("histories live on different groupoids");
    if (!same_time(w1.grid().tau, w2.grid().tau)) throw ValidationError("histories use different time steps");
    const auto& g = *w1.groupoid();
    if (w1.end_outcome() != w2.start_outcome())
        throw ValidationError("cannot compose: first history ends at " + g.outcome_label(w1.end_outcome()) +
                              ", second starts at " + g.outcome_label(w2.start_outcome()));
    if (!same_time(w1.end_time(), w2.start_time()))
        throw ValidationError("cannot compose: first history ends at t = " + std::to_string(w1.end_time()) +
                              ", second starts at t = " + std::to_string(w2.start_time()));
    std::vector<Segment> segments = w1.segments();
    segments.insert(segments.end(), w2.segments().begin(), w2.segments().end());
    TimeGrid grid{w1.start_time(), w1.grid().tau, w1.step_count() + w2.step_count()};
    return History::make(w1.groupoid(), grid, std::move(segments), w1.start_outcome());
}

History invert_history(const History& w) {
    const auto& g = *w.groupoid();
    std::vector<Segment> segments;
    for (auto it = w.segments().rbegin(); it != w.segments().rend(); ++it) {
        Segment s{flipped(it->orientation), {}};
        for (auto step = it->steps.rbegin(); step != it->steps.rend(); ++step) s.steps.push_back(g.inverse(*step));
        segments.push_back(std::move(s));
    }
    TimeGrid grid{w.end_time(), w.grid().tau, w.step_count()};
    return History::make(w.groupoid(), grid, std::move(segments), w.end_outcome());
}

ElementId total_variation(const History& w) {
    const auto& g = *w.groupoid();
    ElementId acc = g.unit(w.start_outcome());
    for (const auto& s : w.segments())
        for (auto e : s.steps) acc = g.compose(e, acc);
    return acc;
}

bool is_loop(const History& w) {
    return w.start_outcome() == w.end_outcome() && w.net_displacement() == 0;
}

Complex action(const History& w, const QLagrangian& ell) {
    if (!(ell.groupoid() == w.groupoid() || *ell.groupoid() == *w.groupoid()))
        throw GroupoidMismatchError("lagrangian lives on a different groupoid than the history");
    const double tau = w.grid().tau;
    Complex s{};
    for (const auto& seg : w.segments())
        for (auto e : seg.steps) s += static_cast<double>(sign(seg.orientation)) * ell(e) * tau;
    return s;
}

Complex phase_of_action(Complex s, double hbar) { return std::exp(Complex(0.0, 1.0) * s / hbar); }

double normalization(const History& w, const OutcomeBias& p) {
    return std::sqrt(p(w.start_outcome()) * p(w.end_outcome()));
}

Complex history_amplitude(const History& w, const QLagrangian& ell, const OutcomeBias& p, double hbar) {
    if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
    return normalization(w, p) * phase_of_action(action(w, ell), hbar);
}

History decompose_history(const History& w, const History& w_ref) {
    if (w.start_outcome() != w_ref.start_outcome() || w.end_outcome() != w_ref.end_outcome() ||
        !same_time(w.start_time(), w_ref.start_time()) || !same_time(w.end_time(), w_ref.end_time()))
        throw ValidationError("history and reference do not share endpoints");
    return compose_histories(invert_history(w_ref), w);
}

Complex delta_weight(const History& sigma, const QLagrangian& ell, double hbar) {
    if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
    return phase_of_action(-action(sigma, ell), hbar);
}

Complex amplitude_via_reference(const History& w0, Complex gamma_w0, const QLagrangian& ell, const OutcomeBias& p,
                                double hbar) {
    return gamma_w0 * history_amplitude(w0, ell, p, hbar);
}

std::string format_history(const History& w) {
    const auto& g = *w.groupoid();
    std::string out;
    for (std::size_t s = 0; s < w.segments().size(); ++s) {
        const auto& seg = w.segments()[s];
        if (s > 0) out += ';';
        out += seg.orientation == Orientation::future ? "+:" : "-:";
        for (std::size_t k = 0; k < seg.steps.size(); ++k) {
            if (k > 0) out += ',';
            out += g.element_label(seg.steps[k]);
        }
    }
    return out;
}

namespace {

// splits on `sep` outside parentheses
std::vector<std::string_view> split_top(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == sep && depth == 0) {
            parts.push_back(s.substr(begin, i - begin));
            begin = i + 1;
        }
    }
    parts.push_back(s.substr(begin));
    return parts;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

History parse_history(const GroupoidPtr& g, std::string_view text, double t_start, double tau,
                      std::optional<OutcomeId> start) {
    std::vector<Segment> segments;
    std::size_t total = 0;
    text = trim(text);
    std::size_t column = 1;
    if (!text.empty()) {
        for (auto part : split_top(text, ';')) {
            const auto colon = part.find(':');
            if (colon == std::string_view::npos) throw ParseError("segment needs an orientation prefix", 1, column);
            const auto tag = trim(part.substr(0, colon));
            Segment seg;
            if (tag == "+" || tag == "future") {
                seg.orientation = Orientation::future;
            } else if (tag == "-" || tag == "past") {
                seg.orientation = Orientation::past;
            } else {
                throw ParseError("unknown orientation '" + std::string(tag) + "'", 1, column);
            }
            const auto body = trim(part.substr(colon + 1));
            if (!body.empty()) {
                for (auto label : split_top(body, ',')) {
                    const auto e = g->find_element(trim(label));
                    if (!e) throw ParseError("unknown element '" + std::string(trim(label)) + "'", 1, column);
                    seg.steps.push_back(*e);
                }
            }
            total += seg.steps.size();
            segments.push_back(std::move(seg));
            column += part.size() + 1;
        }
    }
    return History::make(g, TimeGrid{t_start, tau, total}, std::move(segments), start);
}

}  // namespace qgroupoid
