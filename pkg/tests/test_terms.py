"""Formula rewriting: matching, normalization, and the convergence certificate."""

import itertools
import random

import pytest

from gatelim.terms import (
    ONE,
    ZERO,
    And,
    BudgetError,
    Not,
    Or,
    TermRule,
    TRS,
    Var,
    apply_substitution,
    certify_convergence,
    critical_pairs,
    demorgan_system,
    evaluate_term,
    joinable,
    load_identities,
    match,
    normalize_term,
    normalize_term_random,
    parse_term,
    random_term,
    rewrite_step,
    term_weight,
    variables,
)

G = Var("g")
X1, X2 = Var("x1"), Var("x2")
TRS_B = demorgan_system()


def boolean_tables_equal(a, b):
    names = sorted(variables(a) | variables(b))
    for bits in itertools.product((0, 1), repeat=len(names)):
        env = dict(zip(names, bits))
        if evaluate_term(a, env) != evaluate_term(b, env):
            return False
    return True


def test_apply_substitution():
    assert apply_substitution(And(G, ONE), {"g": Or(X1, X2)}) == And(Or(X1, X2), ONE)
    assert apply_substitution(Not(X1), {}) == Not(X1)
    assert apply_substitution(And(G, Not(G)), {"g": Not(ONE)}) == And(Not(ONE), Not(Not(ONE)))


def test_match_basic():
    assert match(And(G, ONE), And(Or(X1, X2), ONE)) == {"g": Or(X1, X2)}
    assert match(And(G, Not(G)), And(X1, Not(X2))) is None
    assert match(And(G, Not(G)), And(Not(X1), Not(Not(X1)))) == {"g": Not(X1)}


def test_match_roundtrips_with_substitution():
    rng = random.Random(3)
    for _ in range(200):
        t = random_term(rng, 4)
        binding = match(t, t)
        assert binding is not None
        assert apply_substitution(t, binding) == t


def test_rewrite_step_examples():
    got = rewrite_step(TRS_B, And(Or(X1, X2), ONE))
    assert got == (Or(X1, X2), (), "pass_and_right")
    got = rewrite_step(TRS_B, ZERO)
    assert got == (Not(ONE), (), "zero_elim")
    assert rewrite_step(TRS_B, X1) is None


def test_rewrite_step_is_innermost():
    # the inner redex (x1 and 1) fires before the outer or-dedup
    t = Or(And(X1, ONE), And(X1, ONE))
    got = rewrite_step(TRS_B, t)
    assert got is not None
    assert got[1] == (0,)
    assert got[2] == "pass_and_right"


def test_normalize_examples():
    assert normalize_term(TRS_B, Not(Not(X1))) == X1
    assert normalize_term(TRS_B, And(X1, Not(X1))) == Not(ONE)
    t = Or(And(X1, ONE), ZERO)
    # hand chain: pass_and_right, zero_elim, pass_or_right
    assert normalize_term(TRS_B, t) == X1
    assert boolean_tables_equal(t, X1)


def test_normalize_preserves_boolean_function():
    rng = random.Random(11)
    for _ in range(300):
        t = random_term(rng, 5)
        assert boolean_tables_equal(t, normalize_term(TRS_B, t))


def test_term_weight():
    assert term_weight(ZERO) == 3
    assert term_weight(Not(ONE)) == 2
    assert term_weight(And(X1, ONE)) == 3
    lhs = apply_substitution(And(G, Not(G)), {"g": X1})
    assert term_weight(lhs) == 4 > term_weight(Not(ONE)) == 2


def test_every_rule_strictly_decreases_weight():
    rng = random.Random(5)
    for _ in range(1000):
        g = random_term(rng, 4)
        for rule in TRS_B.rules:
            binding = {name: g for name in variables(rule.lhs)}
            assert term_weight(apply_substitution(rule.lhs, binding)) > term_weight(
                apply_substitution(rule.rhs, binding)
            ), rule.name


def test_every_step_strictly_decreases_weight():
    rng = random.Random(6)
    for _ in range(200):
        t = random_term(rng, 5)
        while True:
            got = rewrite_step(TRS_B, t)
            if got is None:
                break
            assert term_weight(got[0]) < term_weight(t)
            t = got[0]


def test_rules_are_boolean_sound():
    for rule in TRS_B.rules:
        assert boolean_tables_equal(rule.lhs, rule.rhs), rule.name


def test_identities_load_and_are_boolean_sound():
    identities = load_identities()
    assert len(identities) == 25
    for lhs, rhs in identities:
        assert boolean_tables_equal(lhs, rhs)


def test_system_is_the_expected_sixteen_rules():
    expected = [
        ("zero_elim", ZERO, Not(ONE)),
        ("double_neg_elim", Not(Not(G)), G),
        ("and_dedup", And(G, G), G),
        ("or_dedup", Or(G, G), G),
        ("fix_and_right", And(G, Not(ONE)), Not(ONE)),
        ("fix_and_left", And(Not(ONE), G), Not(ONE)),
        ("fix_or_right", Or(G, ONE), ONE),
        ("fix_or_left", Or(ONE, G), ONE),
        ("pass_and_right", And(G, ONE), G),
        ("pass_and_left", And(ONE, G), G),
        ("pass_or_right", Or(G, Not(ONE)), G),
        ("pass_or_left", Or(Not(ONE), G), G),
        ("taut_and_right", And(G, Not(G)), Not(ONE)),
        ("taut_and_left", And(Not(G), G), Not(ONE)),
        ("taut_or_right", Or(G, Not(G)), ONE),
        ("taut_or_left", Or(Not(G), G), ONE),
    ]
    assert [(r.name, r.lhs, r.rhs) for r in TRS_B.rules] == expected


def test_rule_wellformedness_enforced():
    with pytest.raises(ValueError):
        TermRule("bad", G, ONE)
    with pytest.raises(ValueError):
        TermRule("bad", Not(ONE), G)


def assert_normal_structure(t):
    """No double negation, no equal-sibling gate, no constant unless t is one of the two constants."""
    if t == ONE or t == Not(ONE):
        return

    def walk(s):
        assert s != ZERO and s != ONE, "constant inside a non-constant normal form"
        if isinstance(s, Not):
            assert not isinstance(s.child, Not), "double negation in normal form"
            walk(s.child)
        elif isinstance(s, (And, Or)):
            assert s.left != s.right, "equal-sibling gate in normal form"
            walk(s.left)
            walk(s.right)

    walk(t)


def test_normal_form_structure():
    rng = random.Random(7)
    for _ in range(300):
        assert_normal_structure(normalize_term(TRS_B, random_term(rng, 5)))


def test_order_independence():
    rng = random.Random(8)
    for k in range(150):
        t = random_term(rng, 5)
        det = normalize_term(TRS_B, t)
        for seed in range(3):
            assert normalize_term_random(TRS_B, t, random.Random(seed)) == det


def test_critical_pair_example_tautology_vs_double_negation():
    pairs = critical_pairs(TRS_B)
    # overlap of (and g (not g)) with (not (not g2)) at the second argument:
    # peak (and (not g2) (not (not g2))), results (not one) and (and (not g2) g2)
    hits = [
        p
        for p in pairs
        if p.outer_rule == "taut_and_right" and p.inner_rule == "double_neg_elim" and p.position == (1,)
    ]
    assert len(hits) == 1
    pair = hits[0]
    assert pair.left == Not(ONE)
    assert pair.right == And(Not(Var("g2")), Var("g2"))
    assert joinable(TRS_B, pair.left, pair.right)


def test_critical_pair_example_root_overlap():
    pairs = critical_pairs(TRS_B)
    hits = [
        p
        for p in pairs
        if p.outer_rule == "pass_and_right" and p.inner_rule == "pass_and_left" and p.position == ()
    ]
    assert len(hits) == 1
    assert hits[0].left == ONE and hits[0].right == ONE


def test_no_overlap_between_zero_elim_and_or_fixing():
    pairs = critical_pairs(TRS_B)
    assert not [
        p
        for p in pairs
        if {p.outer_rule, p.inner_rule} == {"zero_elim", "fix_or_right"}
    ]


def test_all_critical_pairs_joinable():
    pairs = critical_pairs(TRS_B)
    for p in pairs:
        assert joinable(TRS_B, p.left, p.right), (p.outer_rule, p.inner_rule, p.position)
    # recorded count of the shipped system's critical pairs
    assert len(pairs) == 61


def test_joinable_examples():
    assert joinable(TRS_B, Not(ONE), And(Not(G), G))
    assert joinable(TRS_B, X1, X1)
    assert not joinable(TRS_B, ONE, Not(ONE))


def test_certificate_report():
    report = certify_convergence(TRS_B, samples=200, seed=1)
    assert report.convergent
    assert report.rule_count == 16
    assert report.pair_count == 61
    print(f"critical pairs of the shipped system: {report.pair_count}")


def test_parse_term_grammar():
    assert parse_term("(and g (not g))") == And(G, Not(G))
    assert parse_term("zero") == ZERO
    assert parse_term("  (or one x7) ") == Or(ONE, Var("x7"))
    with pytest.raises(ValueError):
        parse_term("(and g)")
    with pytest.raises(ValueError):
        parse_term("(xor g g)")


def test_budget_error_on_nonterminating_system():
    looping = TRS(terms_rules_loop())
    with pytest.raises(BudgetError):
        normalize_term(looping, And(X1, X2))


def terms_rules_loop():
    # a deliberately circular system to prove the budget trips
    return (
        TermRule("swap", And(Var("a"), Var("b")), And(Var("b"), Var("a"))),
    )
