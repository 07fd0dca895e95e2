#include "polar/eval/metrics.hpp"

#include "polar/core/errors.hpp"

namespace polar::eval {

using agents::StanceLabel;

void ConfusionCounts::add(StanceLabel gold, StanceLabel predicted) {
    if (gold == predicted) {
        of(gold).tp += 1;
    } else {
        of(predicted).fp += 1;
        of(gold).fn += 1;
    }
}

std::int64_t ConfusionCounts::gold_total() const {
    std::int64_t total = 0;
    for (const auto& c : classes) total += c.tp + c.fn;
    return total;
}

StanceLabel map_score_to_stance(double score, double tau) {
    if (tau < 0.0 || tau >= 1.0)
        throw Error("InvalidTau", "tau must satisfy 0 <= tau < 1, got " + std::to_string(tau));
    if (score > tau) return StanceLabel::Favor;
    if (score < -tau) return StanceLabel::Against;
    return StanceLabel::None;
}

StanceLabel map_score_to_stance_binary(double score) {
    return score >= 0.0 ? StanceLabel::Favor : StanceLabel::Against;
}

double f1(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
    if (tp + fp == 0 || tp + fn == 0) return 0.0;
    if (tp == 0) return 0.0; // P + R == 0
    return static_cast<double>(2 * tp) / static_cast<double>(2 * tp + fp + fn);
}

double f_avg(const ConfusionCounts& confusion) {
    const auto& fav = confusion.of(StanceLabel::Favor);
    const auto& agn = confusion.of(StanceLabel::Against);
    return (f1(fav.tp, fav.fp, fav.fn) + f1(agn.tp, agn.fp, agn.fn)) / 2.0;
}

double macro_f1(const ConfusionCounts& confusion) {
    double sum = 0.0;
    for (const auto& c : confusion.classes) sum += f1(c.tp, c.fp, c.fn);
    return sum / 3.0;
}

} // namespace polar::eval
