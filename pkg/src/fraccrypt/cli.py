"""Command-line interface.

Exit codes: 0 success, 2 usage, 3 I/O or format error, 4 precondition
violation, 5 wrong key. Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import bench, metrics
from .container import BLOCK_SIZES, Mode, read_container, write_container
from .errors import FormatError, PreconditionError, WrongKeyError
from .imagecore import load_image, save_image
from .pipeline import decrypt_image, derive_params, encrypt_image, params_for_container, render_quantized

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PRECONDITION = 4
EXIT_WRONG_KEY = 5

KEY_ENV = "FRCT_KEY"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def _scheme_list(text: str) -> list[str]:
    if text == "all":
        return list(bench.SCHEMES)
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in names if s not in bench.SCHEMES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown scheme(s) {', '.join(unknown) or text!r}; choose from {', '.join(bench.SCHEMES)} or 'all'"
        )
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fraccrypt", description="Block-FFT / Arnold cat map image encryption.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("encrypt", help="encrypt a PGM/PPM image")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--key", help=f"passphrase (default: ${KEY_ENV})")
    p.add_argument("--block-size", type=int, default=32, choices=BLOCK_SIZES)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.LOSSLESS.value)
    p.set_defaults(handler=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a lossless container")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--key", help=f"passphrase (default: ${KEY_ENV})")
    p.set_defaults(handler=cmd_decrypt)

    p = sub.add_parser("metrics", help="PSNR and SSIM between two images")
    p.add_argument("--ref", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(handler=cmd_metrics)

    p = sub.add_parser("histogram", help="256-bin histogram CSV of an image")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_histogram)

    p = sub.add_parser("bench", help="timing and fidelity benchmark")
    p.add_argument("--sizes", type=_int_list, default=[256, 512])
    p.add_argument("--schemes", type=_scheme_list, default=list(bench.SCHEMES))
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "markdown"], default="markdown")
    p.set_defaults(handler=cmd_bench)
    return parser


def _passphrase(args, parser) -> str:
    key = args.key if args.key is not None else os.environ.get(KEY_ENV)
    if not key:
        parser.error(f"a passphrase is required: pass --key or set {KEY_ENV}")
    return key


def cmd_encrypt(args, parser) -> int:
    key = _passphrase(args, parser)
    img = load_image(args.input)
    params = derive_params(key, args.block_size, args.mode)
    container = encrypt_image(img, params)
    if params.mode is Mode.LOSSLESS:
        write_container(container, args.out)
    else:
        save_image(render_quantized(container), args.out)
    print(f"arnold_iterations={params.arnold_iterations} fingerprint={params.key_fingerprint.hex()}",
          file=sys.stderr)
    return EXIT_OK


def cmd_decrypt(args, parser) -> int:
    key = _passphrase(args, parser)
    container = read_container(args.input)
    params = params_for_container(container, key)
    img = decrypt_image(container, params)
    save_image(img, args.out)
    return EXIT_OK


def cmd_metrics(args, parser) -> int:
    report = metrics.fidelity_report(load_image(args.ref), load_image(args.test))
    sys.stdout.write(report.to_csv() if args.format == "csv" else report.to_json() + "\n")
    return EXIT_OK


def cmd_histogram(args, parser) -> int:
    img = load_image(args.input)
    hist = metrics.histogram(img)
    lines = ["bin," + ",".join(metrics.channel_names(img.channels))]
    lines += [f"{k}," + ",".join(str(int(v)) for v in hist[:, k]) for k in range(256)]
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_bench(args, parser) -> int:
    cfg = bench.BenchConfig(image_sizes=tuple(args.sizes), schemes=tuple(args.schemes),
                            repetitions=args.reps, seed=args.seed)
    rows = bench.run_bench(cfg)
    sys.stdout.write(bench.emit_table(rows, args.format))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except WrongKeyError as exc:
        print(f"fraccrypt: {exc}", file=sys.stderr)
        return EXIT_WRONG_KEY
    except (FormatError, OSError) as exc:
        print(f"fraccrypt: {exc}", file=sys.stderr)
        return EXIT_IO
    except PreconditionError as exc:
        print(f"fraccrypt: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
