"""Command-line interface.

Exit codes: 0 success, 1 bound violation, 2 input/config error,
3 size or dimension mismatch between inputs.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bounds import CampaignConfig, run_campaign
from .embedding import NotNegativeSemidefiniteError, build_kernel, embed_finite_set
from .io import (
    InputError,
    load_group,
    load_measure,
    load_measure_list,
    load_point,
    measure_to_dict,
)
from .measures import MeasureMismatchError, w1
from .orbit import OrbitPoint, check_isometric_reduction
from .sampling import DISTRIBUTIONS, instance_seed_sequence, random_measure
from .sliced import EXACT_2D, MONTE_CARLO, sw1
from .special_functions import cap_expectation, kappa, sphere_area

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3

DEFAULT_SEED = 0

_METHODS = {"mc": MONTE_CARLO, "exact2d": EXACT_2D}

_EPILOG = """\
exit codes:
  0  success
  1  bound violations found (verify-bounds)
  2  input or configuration error
  3  size/dimension mismatch between inputs

SW_1 is the unnormalized integral over the unit sphere (no division by its
area).  All seeds default to 0, so bare invocations are reproducible.
"""


def _emit(obj, output=None):
    text = json.dumps(obj, indent=2) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _seed(value):
    seed = int(value)
    if not 0 <= seed < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def _positive(value):
    value = int(value)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonnegative(value):
    value = int(value)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def cmd_w1(args):
    alpha, beta = load_measure(args.a), load_measure(args.b)
    dist, matching = w1(alpha, beta)
    _emit({"w1": dist, "matching": list(matching.permutation)}, args.output)
    return EXIT_OK


def cmd_sw1(args):
    alpha, beta = load_measure(args.a), load_measure(args.b)
    method = _METHODS[args.method] if args.method else "auto"
    est = sw1(alpha, beta, method, args.samples, args.seed, args.workers)
    _emit(est.to_dict(), args.output)
    return EXIT_OK


def cmd_kappa(args):
    n = args.n
    _emit(
        {
            "n": n,
            "kappa": kappa(n),
            "sphere_area": sphere_area(n),
            "cap_expectation": cap_expectation(n) if n >= 3 else None,
        },
        args.output,
    )
    return EXIT_OK


def cmd_verify_bounds(args):
    config = CampaignConfig(
        n=args.n,
        k=args.k,
        trials=args.trials,
        seed=args.seed,
        distribution=args.dist,
        num_samples=args.samples,
    )
    report = run_campaign(config, workers=args.workers)
    text = report.to_json() + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.violations == 0 else EXIT_VIOLATION


def cmd_embed(args):
    measures = load_measure_list(args.measures)
    method = _METHODS[args.method] if args.method else "auto"
    kernel = build_kernel(measures, method, args.samples, args.seed)
    result = embed_finite_set(kernel)
    _emit(result.to_dict(), args.output)
    return EXIT_OK


def cmd_quotient_dist(args):
    group = load_group(args.group)
    x, y = load_point(args.x), load_point(args.y)
    for p in (x, y):
        if p.size != group.n:
            raise MeasureMismatchError("n", group.n, p.size)
    lhs, rhs, ok = check_isometric_reduction(OrbitPoint(x, group), OrbitPoint(y, group))
    _emit({"distance": lhs, "w1_orbit_measures": rhs, "reduction_ok": ok}, args.output)
    return EXIT_OK


def cmd_gen(args):
    out = Path(args.out)
    paths = []
    if args.count:
        out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        rng = np.random.default_rng(instance_seed_sequence(args.seed, i))
        alpha = random_measure(rng, args.dist, args.n, args.k)
        path = out / f"measure_{i:05d}.json"
        path.write_text(json.dumps(measure_to_dict(alpha)) + "\n")
        paths.append(str(path))
    _emit({"files": paths})
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="swembed",
        description="Wasserstein and sliced Wasserstein distances of empirical measures.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text, epilog=_EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        return p

    p = add("w1", cmd_w1, "exact 1-Wasserstein distance between two measures")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--output", "-o")

    p = add("sw1", cmd_sw1, "sliced 1-Wasserstein distance (exact in 2D or Monte-Carlo)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--method", choices=sorted(_METHODS), help="default: exact2d when n = 2, else mc")
    p.add_argument("--samples", type=_positive, default=100_000)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--workers", type=_positive, default=None)
    p.add_argument("--output", "-o")

    p = add("kappa", cmd_kappa, "kappa(n) with the sphere area it is built from")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output", "-o")

    p = add("verify-bounds", cmd_verify_bounds, "randomized check of the SW_1 / W_1 sandwich")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--trials", type=_nonnegative, default=100)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="gaussian")
    p.add_argument("--samples", type=_positive, default=20_000)
    p.add_argument("--workers", type=_positive, default=None)
    p.add_argument("--output", "-o")

    p = add("embed", cmd_embed, "Hilbert coordinates for a JSON list of measures")
    p.add_argument("measures")
    p.add_argument("--method", choices=sorted(_METHODS))
    p.add_argument("--samples", type=_positive, default=100_000)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--output", "-o")

    p = add("quotient-dist", cmd_quotient_dist, "orbit-space distance for a finite isometry group")
    p.add_argument("group")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--output", "-o")

    p = add("gen", cmd_gen, "write random measure files")
    p.add_argument("--dist", choices=DISTRIBUTIONS, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--count", type=_nonnegative, default=1)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--out", default=".")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MeasureMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (InputError, NotNegativeSemidefiniteError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
