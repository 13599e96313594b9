"""Batch runs of every check over a catalog profile.

A job is a plain tuple ``(group, check, params)`` so that it pickles cheaply;
workers rebuild groups by name.  Results are returned in job order, which is
fixed by the profile, so output does not depend on the worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from . import checks
from .catalog import CORPUS_WORDS, FULL, SMOKE, get_group
from .structure import fitting_subgroup, prime_divisors
from .subgroups import center, derived_subgroup, full
from .verbal import p_partition, w_values
from .words import gamma, sections, word_from_spec

PROFILES = {"smoke": SMOKE, "full": FULL}
SECTION_PAIRS = [("gamma2", "gamma2"), ("gamma3", "delta1")]
FROBENIUS = {"smoke": [(3, 1, 3), (3, 2, 3)], "full": [(3, 1, 3), (3, 2, 3), (3, 3, 3)]}


@lru_cache(maxsize=None)
def _group(name: str):
    return full(get_group(name))


def jobs_for(profile: str) -> list[tuple]:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    jobs = []
    for name in PROFILES[profile]:
        jobs.append((name, "goodgen", ()))
        jobs.append((name, "focal", ()))
        jobs.append((name, "rank", ()))
        jobs.append((name, "fitting", ()))
        jobs.append((name, "abelian-wi", ()))
        for w, eta in SECTION_PAIRS:
            jobs.append((name, "section", (w, eta)))
        jobs.append((name, "pset", ()))
        jobs.append((name, "lemma-t", ()))
        jobs.append((name, "supplement", ()))
        jobs.append((name, "centralizer", ()))
    for p, m, n in FROBENIUS[profile]:
        jobs.append(("frobenius", "frobenius", (p, m, n)))
    return jobs


def run_job(job: tuple) -> list[dict]:
    """Run one job; returns JSON-ready report dicts (millis kept for --timings)."""
    name, kind, params = job
    out: list[checks.CheckReport] = []
    if kind == "frobenius":
        _, rep = checks.frobenius_counterexample(*params)
        return [_dump(rep)]
    G = _group(name)
    words = [word_from_spec(s) for s in CORPUS_WORDS]
    if kind == "goodgen":
        X = checks.standard_closure(G)
        out = [checks.check_goodgen(G, X, w, name) for w in words]
    elif kind == "focal":
        out = [checks.check_focal(G, w, p, name) for w in words for p in prime_divisors(G.order())]
    elif kind == "rank":
        out = [checks.check_rank_bound(G, w, "nilpotent", name) for w in words]
        out.append(checks.check_rank_bound(G, gamma(2), "metanilpotent", name))
    elif kind == "fitting":
        out = [checks.check_fitting_bound(G, name)]
    elif kind == "abelian-wi":
        out = [checks.check_abelian_wi(G, word_from_spec(s), name) for s in ("gamma2", "gamma3")]
    elif kind == "section":
        w, eta = (word_from_spec(s) for s in params)
        out = [checks.check_section_lemma(G, w, eta, S, name) for S in sections(w)]
    elif kind == "pset":
        vs = w_values(G, gamma(2))
        for p in prime_divisors(G.order()):
            _, Y = p_partition(vs, p)
            for N in (fitting_subgroup(G), derived_subgroup(G)):
                out.append(checks.check_pset(G, N, p, Y, name))
    elif kind == "lemma-t":
        gens = G.gen_indices
        out = [checks.check_lemma_T(G, gens, gens, name),
               checks.check_lemma_T(G, G.indices, derived_subgroup(G).indices, name)]
    elif kind == "supplement":
        out = [checks.find_frattini_supplement(G, N, name)[1]
               for N in (fitting_subgroup(G), derived_subgroup(G))]
    elif kind == "centralizer":
        out = [checks.check_centralizer_fact(G, gamma(2), center(G), name)]
    else:
        raise ValueError(f"unknown job kind {kind!r}")
    return [_dump(r) for r in out]


def _dump(rep: checks.CheckReport) -> dict:
    d = rep.to_json(timings=True)
    d["_text"] = rep.to_text()
    return d


def run_corpus(profile: str, workers: int = 1) -> list[dict]:
    jobs = jobs_for(profile)
    if workers <= 1:
        results = [run_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_job, jobs))
    return [r for batch in results for r in batch]


def summarize(reports: list[dict]) -> dict:
    counts = {v: 0 for v in checks.VERDICTS}
    for r in reports:
        counts[r["verdict"]] += 1
    return {"total": len(reports), **counts}
