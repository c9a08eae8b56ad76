// Copyright 2026 The qpair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpair/verify.h"

#include <cmath>
#include <random>

using namespace qpair;

int VerificationReport::passed(Algorithm algorithm) const {
    int n = 0;
    for (const auto &c : checks) {
        n += c.algorithm == algorithm && c.ok();
    }
    return n;
}

int VerificationReport::total(Algorithm algorithm) const {
    int n = 0;
    for (const auto &c : checks) {
        n += c.algorithm == algorithm;
    }
    return n;
}

bool VerificationReport::all_passed() const {
    for (const auto &c : checks) {
        if (!c.ok()) {
            return false;
        }
    }
    return !checks.empty();
}

namespace {

PairCheck check_run(const RunRecord &record, const BoolFn &f, const std::optional<BoolFn> &g, const Decoder &decoder) {
    PairCheck check{record.algorithm, f, g, 0, record.query_counts, false, false, false, {}};
    const bool want_balanced = is_balanced(f);
    const std::optional<bool> want_different = g ? std::optional<bool>(f.f0 != g->f0) : std::nullopt;

    for (const auto &[bits, p] : record.final_distribution) {
        DecodedAnswer answer;
        if (record.algorithm == Algorithm::kDeutsch) {
            answer.balanced = bits[0] == '1';
        } else {
            answer = decoder(bits);
        }
        if (answer.balanced == want_balanced && answer.different == want_different) {
            check.correct_mass += p;
        }
    }
    check.decode_ok = std::abs(check.correct_mass - 1) <= kExactTol;

    check.steps = trace_run_separability(record);
    bool any_entangled = false;
    for (const auto &s : check.steps) {
        any_entangled |= !s.product;
    }
    switch (record.algorithm) {
        case Algorithm::kDeutsch:
            check.queries_ok = record.query_counts == std::map<std::string, int>{{"f", 1}};
            check.separability_ok = true;
            break;
        case Algorithm::kEntangledPair:
            check.queries_ok = record.query_counts == std::map<std::string, int>{{"f", 1}, {"g", 1}};
            check.separability_ok = any_entangled;
            break;
        case Algorithm::kProductPair:
            check.queries_ok = record.total_queries() == 3;
            check.separability_ok = !any_entangled;
            break;
    }
    return check;
}

}  // namespace

VerificationReport qpair::verify_all(const Decoder &decoder) {
    VerificationReport report;
    for (const auto &fn : all_functions()) {
        report.checks.push_back(check_run(run_deutsch(fn), fn, std::nullopt, decoder));
    }
    for (auto algorithm : {Algorithm::kEntangledPair, Algorithm::kProductPair}) {
        for (const auto &pair : all_promise_pairs()) {
            report.checks.push_back(check_run(run_algorithm(algorithm, pair), pair.f(), pair.g(), decoder));
        }
    }
    return report;
}

bool TheoremAudit::passed() const {
    if (disagreements != 0 || families.size() != kAllFamilies.size()) {
        return false;
    }
    for (const auto &f : families) {
        if (f.max_simultaneous > 1) {
            return false;
        }
    }
    return true;
}

TheoremAudit qpair::audit_theorem(int random_samples, int grid_points, std::uint64_t seed) {
    TheoremAudit audit;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_samples; i++) {
        const auto check = cnot_product_condition(random_product_params(rng));
        audit.random_samples++;
        audit.disagreements += check.predicted_product != check.actual_product;
    }
    const auto grid = family_grid(grid_points);
    for (auto family : kAllFamilies) {
        for (const auto &sample : grid) {
            const auto check = cnot_product_condition(family_member(family, sample));
            audit.family_samples++;
            audit.disagreements += check.predicted_product != check.actual_product;
        }
        audit.families.push_back(audit_family_distinguishability(family, grid));
    }
    return audit;
}
