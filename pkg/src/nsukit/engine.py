"""Probabilistic rule engine over the dialogue state.

A rule is an ordered list of branches guarded by conditions.  Conditions
may consult distribution-valued state variables; firing enumerates every
joint assignment of those variables, weights the first satisfied branch
by the assignment probability and splits that mass uniformly across the
groundings of the rule's quantified variables.  Probability mass not
claimed by any effect maps to "no change".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Callable

from .state import DialogueState, Distribution, StateError

# Distribution-valued state variables; everything else is deterministic.
PROBABILISTIC_VARS = ("a_a", "a_b", "nsu_a", "max_qud")
DISTRIBUTION_TARGETS = frozenset(PROBABILISTIC_VARS)


class SupportExplosionError(StateError):
    """The joint support grew past the configured cap; never truncate silently."""


@dataclass(frozen=True, eq=False)
class Effect:
    """Assignment of a computed value to one state variable."""
    var: str
    value: object

    def _key(self):
        return (self.var, _value_key(self.value))

    def __eq__(self, other):
        if not isinstance(other, Effect):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self) -> str:
        return "Effect(%s)" % self.var


EffectSet = tuple  # tuple[Effect, ...]; the empty tuple means "no change"


@dataclass(frozen=True)
class Branch:
    # condition(state, assignment, env) -> bool
    condition: Callable
    # effects(state, assignment, env) -> list[(EffectSet, probability)]
    effects: Callable


def _single_env(state, assignment):
    return [None]


@dataclass(frozen=True)
class ProbRule:
    name: str
    branches: tuple[Branch, ...]
    reads: tuple[str, ...] = ()        # probabilistic variables the conditions consult
    quantify: Callable = _single_env   # groundings of the quantified variables

    def __repr__(self) -> str:
        return "ProbRule(%s)" % self.name


def joint_assignments(state: DialogueState, reads: tuple[str, ...], cap: int):
    """All joint value assignments of the consulted probabilistic variables."""
    pairs = []
    for name in reads:
        if name not in PROBABILISTIC_VARS:
            raise StateError("%r is not a probabilistic variable" % name)
        dist: Distribution = getattr(state, name)
        pairs.append([(name, value, prob) for value, prob in dist.items()])
    size = 1
    for items in pairs:
        size *= len(items)
    if size > cap:
        raise SupportExplosionError(
            "joint support of %s has %d entries (cap %d)" % (reads, size, cap))
    for combo in itertools.product(*pairs):
        weight = 1.0
        assignment = {}
        for name, value, prob in combo:
            assignment[name] = value
            weight *= prob
        yield assignment, weight


def ground_and_fire(rule: ProbRule, state: DialogueState,
                    cap: int = 512) -> dict:
    """Effect-set distribution produced by one rule against one state.

    Returns a mapping from EffectSet to probability; the empty effect set
    collects all unmatched or residual mass.
    """
    outcomes: dict[EffectSet, float] = {(): 0.0}
    for assignment, weight in joint_assignments(state, rule.reads, cap):
        if weight == 0.0:
            continue
        matched = False
        for branch in rule.branches:
            envs = [env for env in rule.quantify(state, assignment)
                    if branch.condition(state, assignment, env)]
            if not envs:
                continue
            matched = True
            share = weight / len(envs)
            for env in envs:
                claimed = 0.0
                for effect_set, prob in branch.effects(state, assignment, env):
                    if prob < 0 or prob > 1 + 1e-9:
                        raise StateError("bad effect probability %r" % prob)
                    outcomes[effect_set] = outcomes.get(effect_set, 0.0) + share * prob
                    claimed += prob
                if claimed > 1 + 1e-9:
                    raise StateError(
                        "branch of %s assigns mass %r > 1" % (rule.name, claimed))
                outcomes[()] += share * max(0.0, 1.0 - claimed)
            break
        if not matched:
            outcomes[()] += weight
        if len(outcomes) > cap:
            raise SupportExplosionError(
                "effect support of %s exceeded cap %d" % (rule.name, cap))
    return outcomes


def _posterior(state: DialogueState, var: str, outcomes: dict) -> object:
    """Combine effect mass for one variable into its new value."""
    value_mass: dict = {}
    unset_mass = 0.0
    order: list = []
    for effect_set, prob in outcomes.items():
        hits = [e for e in effect_set if e.var == var]
        if hits:
            value = hits[-1].value
            key = _value_key(value)
            if key not in value_mass:
                value_mass[key] = [value, 0.0]
                order.append(key)
            value_mass[key][1] += prob
        else:
            unset_mass += prob

    if var in DISTRIBUTION_TARGETS:
        result: dict = {}
        for key in order:
            value, mass = value_mass[key]
            if isinstance(value, Distribution):
                for v, p in value.items():
                    result[v] = result.get(v, 0.0) + mass * p
            else:
                result[value] = result.get(value, 0.0) + mass
        if unset_mass > 0:
            old: Distribution = getattr(state, var)
            for v, p in old.items():
                result[v] = result.get(v, 0.0) + unset_mass * p
        result = {v: p for v, p in result.items() if p > 1e-12}
        return Distribution(result)

    # Deterministic variable: adopt the maximum-probability effect, where
    # "leave unchanged" competes with the explicit assignments.
    best_value, best_mass = getattr(state, var), unset_mass
    for key in order:
        value, mass = value_mass[key]
        if mass > best_mass + 1e-12:
            best_value, best_mass = value, mass
    return best_value


def _value_key(value) -> object:
    if isinstance(value, Distribution):
        return ("dist", tuple(sorted(((repr(v), p) for v, p in value.items()))))
    return ("val", value)


@dataclass(frozen=True)
class RuleTrace:
    rule: str
    outcomes: tuple  # ((EffectSet, prob), ...)


def _apply_outcomes(state: DialogueState, outcomes: dict) -> DialogueState:
    written = {e.var for effect_set in outcomes for e in effect_set}
    if not written:
        return state
    updates = {var: _posterior(state, var, outcomes) for var in written}
    return replace(state, **updates)


def apply_rules(state: DialogueState, rules, cap: int = 512,
                trace: list | None = None) -> DialogueState:
    """Fire each rule in order against the evolving state.

    Distribution-valued variables receive their full posterior; the
    deterministic ones (facts, qud, new_fec, ...) collapse to the most
    probable effect, with the full outcome distribution kept in `trace`.
    """
    for rule in rules:
        outcomes = ground_and_fire(rule, state, cap)
        if trace is not None:
            trace.append(RuleTrace(rule.name, tuple(sorted(
                outcomes.items(), key=lambda kv: -kv[1]))))
        state = _apply_outcomes(state, outcomes)
    return state


def fire_stage(state: DialogueState, rules, cap: int = 512,
               trace: list | None = None) -> DialogueState:
    """Fire a stage of mutually exclusive rules against the same input state.

    Every rule sees the pre-stage state and their outcome distributions
    are summed before the posterior update, so a probabilistic condition
    variable (say an uncertain NSU class) splits its mass across the
    rules it triggers instead of discounting earlier rules' effects.
    Raises if the rules claim overlapping mass.
    """
    combined: dict[EffectSet, float] = {(): 1.0}
    for rule in rules:
        outcomes = ground_and_fire(rule, state, cap)
        if trace is not None:
            trace.append(RuleTrace(rule.name, tuple(sorted(
                outcomes.items(), key=lambda kv: -kv[1]))))
        claimed = sum(p for es, p in outcomes.items() if es)
        combined[()] -= claimed
        if combined[()] < -1e-9:
            raise StateError("stage rules claim overlapping probability mass")
        for effect_set, prob in outcomes.items():
            if effect_set:
                combined[effect_set] = combined.get(effect_set, 0.0) + prob
        if len(combined) > cap:
            raise SupportExplosionError("stage support exceeded cap %d" % cap)
    combined[()] = max(0.0, combined[()])
    return _apply_outcomes(state, combined)
