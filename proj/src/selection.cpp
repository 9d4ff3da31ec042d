#include "bj/selection.hpp"

#include "bj/error.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <tuple>

namespace bj {

std::string to_string(Criterion c) {
    switch (c) {
        case Criterion::AIC: return "aic";
        case Criterion::BIC: return "bic";
        case Criterion::HQIC: return "hqic";
    }
    return "unknown";
}

double criterion_value(const InformationCriteria& ic, Criterion c) {
    switch (c) {
        case Criterion::AIC: return ic.aic;
        case Criterion::BIC: return ic.bic;
        case Criterion::HQIC: return ic.hqic;
    }
    return ic.aic;
}

namespace {

auto rank_key(const GridEntry& e) {
    return std::make_tuple(!e.criterion_value.has_value(), e.criterion_value.value_or(0.0),
                           e.spec.p + e.spec.q, e.spec.q);
}

}  // namespace

std::vector<GridEntry> grid_search(const TimeSeries& data, int d, int p_max, int q_max,
                                   Criterion criterion, const GridOptions& options) {
    if (p_max < 0 || q_max < 0 || d < 0) {
        throw Error(ErrorCode::InvalidConfig, "grid bounds must be non-negative");
    }
    const ArimaSpec largest{p_max, d, q_max, options.with_constant};
    const auto n_eff = static_cast<int>(data.size()) - d;
    if (n_eff <= largest.parameter_count() + 5) {
        throw Error(ErrorCode::TooFewObservations,
                    std::to_string(data.size()) + " observations cannot support " + largest.label());
    }

    std::vector<GridEntry> entries;
    for (int p = 0; p <= p_max; ++p) {
        for (int q = 0; q <= q_max; ++q) {
            entries.push_back({ArimaSpec{p, d, q, options.with_constant}, std::nullopt, false, std::nullopt, {}});
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
            auto& e = entries[i];
            FitOptions fo = options.fit;
            fo.seed = options.fit.seed + i;
            try {
                auto f = fit(e.spec, data, fo);
                e.criterion_value = criterion_value(f.criteria, criterion);
                e.converged = f.converged;
                e.fit = std::move(f);
            } catch (const Error& err) {
                e.failure = err.what();
            }
        }
    };
    unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp(threads, 1u, static_cast<unsigned>(entries.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();

    if (std::none_of(entries.begin(), entries.end(), [](const GridEntry& e) { return e.fit.has_value(); })) {
        throw Error(ErrorCode::EmptyGrid, "every grid fit failed: " + entries.front().failure);
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const GridEntry& a, const GridEntry& b) { return rank_key(a) < rank_key(b); });
    return entries;
}

const GridEntry& best_model(std::span<const GridEntry> entries) {
    const GridEntry* best = nullptr;
    for (const auto& e : entries) {
        if (!e.converged || !e.criterion_value) {
            continue;
        }
        if (best == nullptr || rank_key(e) < rank_key(*best)) {
            best = &e;
        }
    }
    if (best == nullptr) {
        throw Error(ErrorCode::EmptyGrid, "no converged model to choose from");
    }
    return *best;
}

}  // namespace bj
