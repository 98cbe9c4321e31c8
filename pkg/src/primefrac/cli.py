"""Command-line front door: one subcommand per study, CSV out.

Exit codes: 0 ok, 2 bad flags or ranges, 3 model rejection (aliasing or
arc overlap), 4 resource cap.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import csvio
from .bump import BumpSpec
from .errors import ModelRejection, ResourceCapError
from .iw import IW_SWEEP_HEADER, iw_norm_sweep, sweep_rows
from .kernel import MAX_K, SpectralGrid, build_kernel, kernel_fourier, kernel_fourier_grid
from .lab.studies import decay_study, t_lambda_study
from .lab.weaktype import FAMILIES, WEAK_HEADER, weak_type_sweep
from .lab.norms import norm_report
from .major_arc import (
    ApproxParams, disjointness_check, error_profile, eval_V, eval_V_bound, lemma_gap_sup,
)
from .normest import conjugate
from .numtheory import SIEVE_CAP, sieve_primes

EXIT_OK, EXIT_FLAGS, EXIT_MODEL, EXIT_CAP = 0, 2, 3, 4


class FlagError(ValueError):
    pass


# -- argument types -------------------------------------------------------

def _ranged(kind, lo=None, hi=None, lo_open=False, hi_open=False):
    def parse(s):
        try:
            v = kind(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a valid {kind.__name__}: {s!r}")
        if lo is not None and (v < lo or (lo_open and v == lo)):
            raise argparse.ArgumentTypeError(f"{v} below {'(' if lo_open else '['}{lo}")
        if hi is not None and (v > hi or (hi_open and v == hi)):
            raise argparse.ArgumentTypeError(f"{v} above {hi}{')' if hi_open else ']'}")
        return v
    return parse


def _alpha(s):
    """Float or exact fraction a/q."""
    try:
        return Fraction(s) if "/" in s else float(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or fraction: {s!r}")


def _pow2(s):
    v = _ranged(int, 1)(s)
    if v & (v - 1):
        raise argparse.ArgumentTypeError(f"{v} is not a power of two")
    return v


scale_k = _ranged(int, 1, MAX_K)
exponent = _ranged(float, 1, None, lo_open=True)
unit_open = _ranged(float, 0, 1, lo_open=True, hi_open=True)
positive_int = _ranged(int, 1)
seed_type = _ranged(int, 0, 2**64 - 1)


def _check_range(args, lo_name, hi_name):
    lo, hi = getattr(args, lo_name), getattr(args, hi_name)
    if lo > hi:
        raise FlagError(f"--{hi_name} ({hi}) must be >= --{lo_name} ({lo})")


# -- shared parameter blocks ----------------------------------------------

def _add_out(sp):
    sp.add_argument("--out", help="CSV path (default: stdout)")


def _add_bump(sp):
    sp.add_argument("--r1", type=_ranged(float, 0, lo_open=True), default=0.25,
                    help="bump plateau radius")
    sp.add_argument("--r2", type=_ranged(float, 0, lo_open=True), default=0.5,
                    help="bump support radius")


def _add_approx(sp):
    sp.add_argument("--A", type=_ranged(float, 1), default=2.0)
    sp.add_argument("--C", type=_ranged(float, 0, lo_open=True), default=3.0)
    sp.add_argument("--eps-width", type=_ranged(float, 0, 0.5, True, True), default=0.1)
    sp.add_argument("--tmax", type=_ranged(int, 0), default=None)
    sp.add_argument("--C0", type=_ranged(float, 1), default=2.0)
    _add_bump(sp)


def _bump(args) -> BumpSpec:
    try:
        return BumpSpec(args.r1, args.r2)
    except ValueError:
        raise FlagError(f"--r1 ({args.r1}) must be below --r2 ({args.r2})") from None


def _approx(args) -> ApproxParams:
    if args.C < 3:
        raise FlagError(f"--C must be >= 3 for the approximation, got {args.C}")
    return ApproxParams(args.A, args.C, args.eps_width, args.tmax, args.C0, _bump(args))


# -- subcommands -----------------------------------------------------------
# Each returns (meta extras, header, rows, summary line).

def cmd_sieve(args):
    t = sieve_primes(args.limit)
    rows = zip(range(len(t)), t.primes.tolist(), t.logweights.tolist())
    return {}, ("index", "p", "log_p"), rows, f"{len(t)} primes <= {args.limit}"


def cmd_expsum(args):
    K = build_kernel(args.k)
    if args.alpha is not None:
        v = kernel_fourier(K, args.alpha)
        rows = [(str(args.alpha), v.real, v.imag, abs(v))]
        return {}, ("alpha", "re", "im", "abs"), rows, f"{v.real:.6f} {v.imag:+.6f}i"
    N = args.N or K.min_grid
    g = kernel_fourier_grid(K, N)
    return {"M": N}, SpectralGrid.CSV_HEADER, g.csv_rows(), f"max|K^| = {np.abs(g.values).max()!r}"


def cmd_varc(args):
    if args.alpha is not None:
        alphas = np.array([float(args.alpha)])
    else:
        alphas = np.arange(args.N) / args.N
    v = np.atleast_1d(eval_V(args.k, alphas))
    b = np.atleast_1d(eval_V_bound(args.k, alphas))
    rows = zip(alphas.tolist(), v.real.tolist(), v.imag.tolist(), np.abs(v).tolist(), b.tolist())
    summary = f"{v[0].real:.6f} {v[0].imag:+.6f}i" if len(v) == 1 else f"{len(v)} values"
    return {}, ("alpha", "re", "im", "abs", "bound"), rows, summary


def cmd_approx(args):
    prof = error_profile(args.k, _approx(args), args.N)
    return (
        {"M": prof.N, "sup": prof.sup},
        prof.CSV_HEADER, prof.csv_rows(),
        f"sup|E_k| = {prof.sup!r} at alpha = {prof.argmax_alpha!r}",
    )


def cmd_gap(args):
    rep = lemma_gap_sup(args.k, _approx(args), args.N, refine=not args.no_refine)
    meta = {"M": rep.N, "sup": rep.sup, "sinc_bound_holds": rep.sinc_bound_holds}
    meta.update({f"shell{t}": v for t, v in rep.per_shell.items()})
    return meta, rep.CSV_HEADER, rep.csv_rows(), f"sup|L - L'| = {rep.sup!r}"


def cmd_arcs(args):
    params = ApproxParams(C=args.C, bump=_bump(args))
    rows = []
    bad = []
    for t in range(args.tmin, args.tmax + 1):
        r = disjointness_check(t, params)
        rows.append((t, r.disjoint, r.min_gap, r.radius, "|".join(f"{a}/{q}" for a, q in (r.pair or ()))))
        if not r.disjoint:
            bad.append(t)
    summary = "all disjoint" if not bad else f"overlaps at t = {bad}"
    return {}, ("t", "disjoint", "min_gap", "radius", "pair"), rows, summary


def cmd_iw(args):
    _check_range(args, "kmin", "kmax")
    if not 0 < args.rho < args.rhoprime < 1:
        raise FlagError(f"need 0 < --rho < --rhoprime < 1, got {args.rho}, {args.rhoprime}")
    reps = iw_norm_sweep(
        args.p, args.kmin, args.kmax, args.trials, args.seed, args.C0, args.rho,
        args.rhoprime, _bump(args), args.iters,
    )
    worst = max(r.ratio_over_logN for r in reps if r.N > 1) if any(r.N > 1 for r in reps) else float("nan")
    return {}, IW_SWEEP_HEADER, list(sweep_rows(reps)), f"max ratio/log N = {worst!r}"


def cmd_norms(args):
    pprime = args.pprime = args.pprime or conjugate(args.p)
    r = norm_report(args.k, args.p, pprime, args.delta, args.iters, args.seed,
                    search=not args.no_search)
    header = ("k", "p", "pprime", "A1", "A2_lo", "A2_hi", "pbar", "embed", "interp_bound",
              "searched_lower")
    row = (r.k, r.p, r.pprime, r.A1, r.A2_lo, r.A2_hi, r.pbar, r.embed, r.interpolated,
           r.searched if r.searched is not None else float("nan"))
    return {"M": 1 << (args.k + 2)}, header, [row], f"A1={r.A1!r} A2=[{r.A2_lo!r}, {r.A2_hi!r}]"


def cmd_weaktype(args):
    _check_range(args, "kmin", "kmax")
    rows, maxima = [], []
    for k in range(args.kmin, args.kmax + 1):
        res = weak_type_sweep(k, args.eps_loss, args.trials, args.seed + k, args.family)
        rows.extend(res.rows)
        maxima.append(res.max)
    return {}, WEAK_HEADER, rows, "max constants: " + " ".join(f"{m:.6g}" for m in maxima)


def cmd_decay(args):
    _check_range(args, "kmin", "kmax")
    pprime = args.pprime = args.pprime or conjugate(args.p)
    study = decay_study(
        args.kmin, args.kmax, args.p, pprime, args.eps_loss, args.delta, args.iters,
        args.seed, search=not args.no_search, decomposition=args.decomposition,
        approx=_approx(args),
    )
    meta = {f"slope_{k}": v for k, v in study.slopes.items()}
    return meta, study.header, study.rows, f"interp slope = {study.slopes['interp_bound']!r}"


def cmd_tlambda(args):
    pprime = args.pprime = args.pprime or conjugate(args.p)
    study = t_lambda_study(args.lam, args.p, pprime, args.P, args.iters, args.seed,
                           search=not args.no_search)
    return (
        {"admissible": study.admissible}, study.header, study.rows,
        f"admissible={study.admissible} upper bounds: "
        + " ".join(f"{r[6]:.6g}" for r in study.rows),
    )


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="primefrac", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sieve", help="primes and log weights up to a limit")
    sp.add_argument("--limit", type=_ranged(int, 2, SIEVE_CAP), required=True)
    sp.set_defaults(func=cmd_sieve)

    sp = sub.add_parser("expsum", help="prime kernel transform, pointwise or on a grid")
    sp.add_argument("--k", type=scale_k, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--alpha", type=_alpha)
    g.add_argument("--N", type=_pow2, help="grid size (default 2^(k+2))")
    sp.set_defaults(func=cmd_expsum)

    sp = sub.add_parser("varc", help="continuous model V_k")
    sp.add_argument("--k", type=scale_k, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha", type=_alpha)
    g.add_argument("--N", type=positive_int)
    sp.set_defaults(func=cmd_varc)

    for name, fn, hlp in (("approx", cmd_approx, "error profile of the major-arc model"),
                          ("gap", cmd_gap, "sup of the bump-swap difference")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("--k", type=scale_k, required=True)
        sp.add_argument("--N", type=_pow2)
        _add_approx(sp)
        if name == "gap":
            sp.add_argument("--no-refine", action="store_true")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("arcs", help="disjointness of the chi arcs per shell")
    sp.add_argument("--C", type=_ranged(float, 0, lo_open=True), default=3.0)
    sp.add_argument("--tmin", type=_ranged(int, 0), default=0)
    sp.add_argument("--tmax", type=_ranged(int, 0, 12), required=True)
    _add_bump(sp)
    sp.set_defaults(func=cmd_arcs)

    sp = sub.add_parser("iw", help="l^p norm sweep of the low-frequency projection")
    sp.add_argument("--p", type=exponent, required=True)
    sp.add_argument("--kmin", type=_ranged(int, 1, 16), default=4)
    sp.add_argument("--kmax", type=_ranged(int, 1, 16), default=8)
    sp.add_argument("--trials", type=positive_int, default=8)
    sp.add_argument("--iters", type=positive_int, default=5)
    sp.add_argument("--C0", type=_ranged(float, 1), default=2.0)
    sp.add_argument("--rho", type=unit_open, default=0.1)
    sp.add_argument("--rhoprime", type=unit_open, default=0.5)
    sp.add_argument("--seed", type=seed_type, default=0)
    _add_bump(sp)
    sp.set_defaults(func=cmd_iw)

    sp = sub.add_parser("norms", help="endpoint, certified l^2 and searched norms")
    sp.add_argument("--k", type=scale_k, required=True)
    sp.add_argument("--p", type=exponent, required=True)
    sp.add_argument("--pprime", type=exponent, default=None, help="default: conjugate of p")
    sp.add_argument("--delta", type=_ranged(float, 0, lo_open=True), default=1e-2)
    sp.add_argument("--iters", type=positive_int, default=10)
    sp.add_argument("--seed", type=seed_type, default=0)
    sp.add_argument("--no-search", action="store_true")
    sp.set_defaults(func=cmd_norms)

    sp = sub.add_parser("weaktype", help="restricted weak-type constants")
    sp.add_argument("--kmin", type=scale_k, required=True)
    sp.add_argument("--kmax", type=scale_k, required=True)
    sp.add_argument("--eps-loss", type=_ranged(float, 0, 0.5, True, True), default=0.1)
    sp.add_argument("--trials", type=positive_int, default=200)
    sp.add_argument("--family", choices=FAMILIES, default="random")
    sp.add_argument("--seed", type=seed_type, default=0)
    sp.set_defaults(func=cmd_weaktype)

    sp = sub.add_parser("decay", help="per-scale decay table")
    sp.add_argument("--kmin", type=scale_k, required=True)
    sp.add_argument("--kmax", type=scale_k, required=True)
    sp.add_argument("--p", type=exponent, required=True)
    sp.add_argument("--pprime", type=exponent, default=None, help="default: conjugate of p")
    sp.add_argument("--eps-loss", type=_ranged(float, 0, 1, hi_open=True), default=0.1)
    sp.add_argument("--delta", type=_ranged(float, 0, lo_open=True), default=1e-2)
    sp.add_argument("--iters", type=positive_int, default=5)
    sp.add_argument("--seed", type=seed_type, default=0)
    sp.add_argument("--no-search", action="store_true")
    sp.add_argument("--decomposition", action="store_true")
    _add_approx(sp)
    sp.set_defaults(func=cmd_decay)

    sp = sub.add_parser("tlambda", help="truncated fractional operator study")
    sp.add_argument("--lam", type=_ranged(float, 0, 1), required=True)
    sp.add_argument("--p", type=exponent, required=True)
    sp.add_argument("--pprime", type=exponent, default=None, help="default: conjugate of p")
    sp.add_argument("--P", type=_ranged(int, 2, 1 << MAX_K), nargs="+", required=True)
    sp.add_argument("--iters", type=positive_int, default=10)
    sp.add_argument("--seed", type=seed_type, default=0)
    sp.add_argument("--no-search", action="store_true")
    sp.set_defaults(func=cmd_tlambda)

    for sp in sub.choices.values():
        _add_out(sp)
    return ap


def _meta(args, extra) -> dict:
    meta = {"command": args.command}
    for key, v in sorted(vars(args).items()):
        if key in ("command", "func", "out"):
            continue
        if isinstance(v, list):
            v = ";".join(str(x) for x in v)
        meta[key] = "none" if v is None else v
    meta.update(extra)
    return meta


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on bad flags
    try:
        extra, header, rows, summary = args.func(args)
        text = csvio.render_csv(_meta(args, extra), header, rows)
    except FlagError as exc:
        parser.error(str(exc))
    except ModelRejection as exc:
        print(f"primefrac: model rejected: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except ResourceCapError as exc:
        print(f"primefrac: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"primefrac: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(f"# {summary}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
