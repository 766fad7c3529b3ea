#pragma once

#include <stdexcept>
#include <string>

namespace ccfg {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Axiom C1: the diagonal is not a union of relations.
struct c1_violation : error {
    int point;
    int color;
    c1_violation(int point_, int color_, const std::string& msg)
        : error(msg), point(point_), color(color_) {}
};

// Axiom C2: the converse of a relation is not a relation.
struct c2_violation : error {
    int color;
    c2_violation(int color_, const std::string& msg) : error(msg), color(color_) {}
};

// Axiom C3: |alpha r ∩ beta s*| depends on the choice of (alpha,beta) in t.
struct c3_violation : error {
    int r, s, t;
    std::pair<int, int> pair1, pair2;
    int count1, count2;
    c3_violation(int r_, int s_, int t_, std::pair<int, int> p1, std::pair<int, int> p2,
                 int c1, int c2, const std::string& msg)
        : error(msg), r(r_), s(s_), t(t_), pair1(p1), pair2(p2), count1(c1), count2(c2) {}
};

struct identity_violation : error {
    using error::error;
};
struct not_fiber_union : error {
    using error::error;
};
struct out_of_range : error {
    using error::error;
};
struct not_homogeneous : error {
    using error::error;
};
struct reflexive_relation : error {
    using error::error;
};
struct not_quasi_thin : error {
    using error::error;
};
struct not_max_valency : error {
    using error::error;
};
struct not_saturated : error {
    using error::error;
};
struct not_algebraic_iso : error {
    using error::error;
};
struct inconsistent_extension : error {
    using error::error;
};
struct degree_mismatch : error {
    using error::error;
};
struct rank_too_large : error {
    using error::error;
};
struct not_subgroup : error {
    using error::error;
};
struct not_transitive : error {
    using error::error;
};
struct too_large : error {
    using error::error;
};
struct bad_parameters : error {
    using error::error;
};
struct not_prime : bad_parameters {
    using bad_parameters::bad_parameters;
};
struct not_divisor : bad_parameters {
    using bad_parameters::bad_parameters;
};
struct hypothesis_unmet : error {
    using error::error;
};
struct realization_failed : error {
    using error::error;
};
struct construction_failed : error {
    using error::error;
};
struct precondition_violated : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};

}  // namespace ccfg
