"""Sampled verification suites: one runner per identity family.

Each runner draws its seeded sample, evaluates both sides of the identity
at every point, and returns the list of VerificationReports (sorted by
input tuple, so identical configurations produce identical report
streams).  The CLI and the acceptance tests share these entry points.
"""

import mpmath as mp

from . import hyper, identities, mzvnum
from .config import RunConfig
from .precision import validate_special_functions
from .report import VerificationReport, make_report
from .sampling import PointSampler

TRUNCATION_SAMPLES = 5


def _sorted_reports(reports):
    return sorted(reports, key=lambda r: tuple(str(v) for _, v in sorted(r.inputs.items())))


def run_lemma21(cfg: RunConfig):
    sampler = PointSampler(cfg.seed)
    reports = [
        identities.lemma21_check(u, v, t, cfg.precision_bits, cfg.tier1)
        for u, v, t in sampler.uvt(cfg.samples)
    ]
    return _sorted_reports(reports)


def run_phi_agree(cfg: RunConfig):
    sampler = PointSampler(cfg.seed)
    reports = [
        identities.phi_agreement_check(u, v, t, cfg.precision_bits, cfg.tier1)
        for u, v, t in sampler.uvt(cfg.samples)
    ]
    for u, v, t in sampler.uvt_truncation(TRUNCATION_SAMPLES):
        reports.append(
            identities.phi_truncation_check(
                u, v, t, cfg.precision_bits, max_weight=14, tolerance=cfg.trunc_tier_14
            )
        )
        reports.append(
            identities.phi_agreement_check(u, v, t, cfg.precision_bits, cfg.tier1)
        )
    return _sorted_reports(reports)


def _uvt_suite(check, cfg):
    sampler = PointSampler(cfg.seed)
    return _sorted_reports(
        [check(u, v, t, cfg.precision_bits, cfg.tier1) for u, v, t in sampler.uvt(cfg.samples)]
    )


def run_lemma42(cfg):
    return _uvt_suite(identities.lemma42_check, cfg)


def run_lemma43(cfg):
    return _uvt_suite(identities.lemma43_check, cfg)


def run_lemma44(cfg):
    return _uvt_suite(identities.lemma44_check, cfg)


def run_lemma45(cfg):
    return _uvt_suite(identities.lemma45_check, cfg)


def run_partial_fraction(cfg, points=1000):
    """Exact rational partial-fraction identity; one summary report."""
    sampler = PointSampler(cfg.seed)
    quads = sampler.rational_quadruples(points)
    failures = sum(0 if identities.partial_fraction_identity(*q) else 1 for q in quads)
    return [
        VerificationReport(
            identity_name="partial-fraction-exact",
            inputs={"points": len(quads)},
            lhs=failures,
            rhs=0,
            residual=mp.mpf(failures),
            tolerance=mp.mpf(0),
            precision_bits=0,
            notes={"arithmetic": "exact rational"},
        )
    ]


def run_theorem(cfg):
    sampler = PointSampler(cfg.seed)
    reports = [
        identities.theorem_check(u, v, t, "f32", cfg.precision_bits, cfg.tier1)
        for u, v, t in sampler.uvt(cfg.samples)
    ]
    for u, v, t in sampler.uvt_truncation(TRUNCATION_SAMPLES):
        reports.append(
            identities.theorem_check(
                u, v, t, "truncated", cfg.precision_bits,
                cfg.truncation_tier(cfg.max_weight), cfg.max_weight,
            )
        )
    return _sorted_reports(reports)


def run_height_one(cfg):
    sampler = PointSampler(cfg.seed)
    reports = [
        identities.height_one_check(u, v, cfg.precision_bits, cfg.tier1)
        for u, v in sampler.uv_pairs(cfg.samples)
    ]
    # consistency with the main identity at t = 0
    for u, v in sampler.uv_pairs(3):
        zero = mp.mpf(0)
        main = identities.theorem_check(u, v, zero, "f32", cfg.precision_bits, cfg.tier1)
        h1 = identities.height_one_check(u, v, cfg.precision_bits, cfg.tier1)
        agree = make_report(
            "height-one-vs-main-at-t0",
            {"u": u, "v": v},
            h1.lhs, main.lhs, cfg.tier1, cfg.precision_bits,
        )
        reports.extend([main, agree])
    return _sorted_reports(reports)


def run_ohno_zagier(cfg):
    sampler = PointSampler(cfg.seed)
    reports = []
    for u, v, t in sampler.uvt_truncation(TRUNCATION_SAMPLES):
        reports.append(
            mzvnum.ohno_zagier_check(
                u, v, t, cfg.max_weight, cfg.precision_bits,
                cfg.truncation_tier(cfg.max_weight),
            )
        )
    return _sorted_reports(reports)


def run_gauss(cfg):
    sampler = PointSampler(cfg.seed)
    reports = []
    count = 0
    while count < cfg.samples:
        (a, b, c) = sampler.prop31_abc(1)[0]
        c = c + 1  # move the bottom parameter into (0.75, 1.25)
        if c - a - b < mp.mpf("0.2"):
            continue
        lhs = hyper.f21_unit_gauss(a, b, c, cfg.precision_bits)
        rhs = hyper.f21_unit_direct(a, b, c, precision_bits=cfg.precision_bits)
        reports.append(
            make_report(
                "gauss-summation", {"a": a, "b": b, "c": c},
                lhs, rhs, cfg.tier1, cfg.precision_bits,
            )
        )
        count += 1
    return _sorted_reports(reports)


def run_trans2(cfg):
    sampler = PointSampler(cfg.seed)
    return _sorted_reports(
        [
            hyper.trans_check_two(hyper.HyperParams32(tops, bottoms), cfg.precision_bits, cfg.tier1)
            for tops, bottoms in sampler.hyper32(cfg.samples)
        ]
    )


def run_trans1(cfg):
    sampler = PointSampler(cfg.seed)
    return _sorted_reports(
        [
            hyper.trans_check_one(hyper.HyperParams32(tops, bottoms), cfg.precision_bits, cfg.tier1)
            for tops, bottoms in sampler.hyper32(cfg.samples)
        ]
    )


def run_prop31(cfg):
    sampler = PointSampler(cfg.seed)
    reports = [
        hyper.prop31_check(a, b, c, cfg.precision_bits, cfg.tier1)
        for a, b, c in sampler.prop31_abc(cfg.samples)
    ]
    for a, b, c in sampler.prop31_abc(3):
        for eps in (mp.mpf("1e-2"), mp.mpf("1e-3")):
            reports.append(
                hyper.prop31_epsilon_probe(a, b, c, eps, cfg.precision_bits)
            )
    return _sorted_reports(reports)


SUITES = {
    "lemma21": run_lemma21,
    "phi-agree": run_phi_agree,
    "lemma42": run_lemma42,
    "lemma43": run_lemma43,
    "lemma44": run_lemma44,
    "lemma45": run_lemma45,
    "partial-fraction": run_partial_fraction,
    "theorem": run_theorem,
    "height-one": run_height_one,
    "ohno-zagier": run_ohno_zagier,
    "gauss": run_gauss,
    "trans2": run_trans2,
    "trans1": run_trans1,
    "prop31": run_prop31,
}


def run_suite(name, cfg):
    validate_special_functions(cfg.precision_bits)
    if name == "all":
        reports = []
        for key in SUITES:
            reports.extend(SUITES[key](cfg))
        return reports
    if name not in SUITES:
        raise KeyError("unknown suite %r (choose from %s, all)" % (name, ", ".join(SUITES)))
    return SUITES[name](cfg)
