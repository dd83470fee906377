# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from statsd import StatsClient
from tornado.log import LogFormatter
from traitlets import Bool
from traitlets import default
from traitlets import Dict
from traitlets import Int
from traitlets import Unicode
from traitlets.config import Application
from traitlets.config.application import catch_config_error

from ._version import __version__
from .analysis import analysis_dict
from .analysis import analyze
from .analysis import format_table
from .codec import decode
from .codec import encode
from .codec import read_blob
from .codec import write_blob
from .enumeration import code_rate
from .enumeration import max_n_for_rate
from .enumeration import rank
from .enumeration import unrank
from .errors import DistributionError
from .errors import TypeQuantError
from .formats import load_distributions
from .formats import read_distributions
from .lattice import nearest
from .log import app_log
from .simplex import ALL_NORMS
from .simplex import distance
from .simplex import LatticeSpec
from .simplex import Norm
from .sweep import run_sweep
from .sweep import write_csv
from .trees import Scheme
from .utils import EmptyClass
from .utils import parse_counts
from .utils import parse_fraction

try:  # Python 3.8
    from functools import cached_property
except ImportError:
    from .utils import cached_property

# -----------------------------------------------------------------------------
# Code
# -----------------------------------------------------------------------------

EXIT_USAGE = 2
EXIT_DATA = 3

THREADS_ENV = "SIMPLEX_QUANT_THREADS"


class UsageError(Exception):
    """Conflicting or missing command-line options."""


def _jsonable(value):
    if isinstance(value, dict):
        return {
            (k.value if isinstance(k, Norm) else k): _jsonable(v) for k, v in value.items()
        }
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "tolist"):
        return _jsonable(value.tolist())
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def report(obj, file=None):
    """print one JSON line; non-finite floats are written as strings"""
    print(json.dumps(_jsonable(obj)), file=file or sys.stdout)


def _usage(parse, value):
    try:
        return parse(value)
    except TypeQuantError as e:
        raise UsageError(str(e))


base_aliases = {
    "config-file": "TypeQuantBase.config_file",
    "log-level": "Application.log_level",
    "statsd-host": "TypeQuantBase.statsd_host",
    "statsd-port": "TypeQuantBase.statsd_port",
    "statsd-prefix": "TypeQuantBase.statsd_prefix",
    "threads": "TypeQuantBase.threads",
}

base_flags = {
    "debug": (
        {"Application": {"log_level": logging.DEBUG}},
        "Set log-level to debug, for the most verbose logging.",
    ),
}


class TypeQuantBase(Application):
    """Configuration and logging shared by the root command and every subcommand."""

    version = __version__

    aliases = Dict(base_aliases)

    flags = Dict(base_flags)

    answer_yes = Bool(
        default_value=False,
        help="Answer yes to any questions (e.g. confirm overwrite).",
    ).tag(config=True)

    config_file = Unicode(
        default_value="typequant_config.py", help="The config file to load."
    ).tag(config=True)

    generate_config = Bool(
        default_value=False, help="Generate default config file."
    ).tag(config=True)

    statsd_host = Unicode(
        default_value="", help="Host running statsd to send metrics to."
    ).tag(config=True)

    statsd_port = Int(
        default_value=8125,
        help="Port on which statsd is listening for metrics on statsd_host.",
    ).tag(config=True)

    statsd_prefix = Unicode(
        default_value="typequant",
        help="Prefix to use for naming metrics sent to statsd.",
    ).tag(config=True)

    threads = Int(
        help="Number of threads evaluating Monte Carlo chunks (0 or 1: no pool). "
        "Defaults to $%s, else the CPU count." % THREADS_ENV
    ).tag(config=True)

    @default("threads")
    def _default_threads(self):
        value = os.environ.get(THREADS_ENV)
        if value:
            try:
                return max(int(value), 0)
            except ValueError:
                self.log.warning("Ignoring %s=%r, not an integer", THREADS_ENV, value)
        return os.cpu_count() or 1

    # Attribute inherited from traitlets.config.Application, automatically used to style logs
    _log_formatter_cls = LogFormatter
    # Need Tornado LogFormatter for color logs, keys 'color' and 'end_color' in log_format

    @default("log_level")
    def _log_level_default(self):
        return logging.INFO

    @default("log_format")
    def _log_format_default(self):
        """override default log format to include time and color, plus to always display the log level, not just when it's high"""
        return "%(color)s[%(levelname)1.1s %(asctime)s.%(msecs).03d %(name)s %(module)s:%(lineno)d]%(end_color)s %(message)s"

    @default("log_datefmt")
    def _log_datefmt_default(self):
        """Exclude date from default date format"""
        return "%Y-%m-%d %H:%M:%S"

    @cached_property
    def pool(self):
        if self.threads <= 1:
            return None
        self.log.debug("Evaluating Monte Carlo chunks on %i threads", self.threads)
        return ThreadPoolExecutor(self.threads)

    @cached_property
    def statsd(self):
        if not self.statsd_host:
            return EmptyClass()
        self.log.info(
            "Sending metrics to statsd at %s:%i", self.statsd_host, self.statsd_port
        )
        return StatsClient(self.statsd_host, self.statsd_port, prefix=self.statsd_prefix)

    def init_logging(self):
        # This prevents double log messages: self.log already has its own handler
        self.log.propagate = False

        # hook up the library's loggers to our app handlers
        for log in (app_log, logging.getLogger("py.warnings")):
            log.parent = self.log
            log.propagate = True
            log.setLevel(self.log_level)
        logging.captureWarnings(True)

    def exit(self, exit_status=0):
        # traitlets reports bad arguments and bad config with status 1
        if exit_status == 1:
            exit_status = EXIT_USAGE
        super().exit(exit_status)

    # Mostly copied from JupyterHub because if it isn't broken then don't fix it.
    def write_config_file(self):
        """Write our default config to a .py config file"""
        config_file_dir = os.path.dirname(os.path.abspath(self.config_file))
        if not os.path.isdir(config_file_dir):
            self.log.error(
                "%s does not exist. The destination directory must exist before generating config file.",
                config_file_dir,
            )
            self.exit(EXIT_USAGE)
        if os.path.exists(self.config_file) and not self.answer_yes:
            answer = ""

            def ask():
                prompt = "Overwrite %s with default config? [y/N]" % self.config_file
                try:
                    return input(prompt).lower() or "n"
                except (KeyboardInterrupt, EOFError):
                    print("")  # empty line
                    return "n"

            answer = ask()
            while not answer.startswith(("y", "n")):
                print("Please answer 'yes' or 'no'")
                answer = ask()
            if answer.startswith("n"):
                self.log.info("Not overwriting config file with default.")
                self.exit(0)

        # Inherited method from traitlets.config.Application
        config_text = self.generate_config_file()
        if isinstance(config_text, bytes):
            config_text = config_text.decode("utf8")
        print("Writing default config to: %s" % self.config_file)
        with open(self.config_file, mode="w") as f:
            f.write(config_text)
        self.exit(0)

    @catch_config_error
    def initialize(self, argv=None):
        # parse command line; the root app hands a subcommand's arguments to it here
        super().initialize(argv)
        if self.subapp is not None:
            return

        if self.generate_config:
            self.write_config_file()

        # Inherited method from traitlets.config.Application
        self.load_config_file(self.config_file)
        self.init_logging()

    def lattice_spec(self, m, n, beta="0"):
        return LatticeSpec(m, n, _usage(lambda b: parse_fraction(b, m), beta))

    def positional(self, what):
        if not self.extra_args:
            raise UsageError("missing %s" % what)
        return self.extra_args


def _aliases(**extra):
    aliases = dict(base_aliases)
    aliases.update(extra)
    return aliases


def _flags(**extra):
    flags = dict(base_flags)
    flags.update(extra)
    return flags


class QuantizeApp(TypeQuantBase):
    name = Unicode("typequant-quantize")
    description = "Quantize distributions read from a file (or - for stdin) and report the nearest lattice point."

    aliases = Dict(
        _aliases(
            m="QuantizeApp.m",
            n="QuantizeApp.n",
            rate="QuantizeApp.rate",
            beta="QuantizeApp.beta",
            norm="QuantizeApp.norm",
            out="QuantizeApp.out",
            format="QuantizeApp.input_format",
        )
    )

    flags = Dict(
        _flags(
            dual=(
                {"QuantizeApp": {"dual": True}},
                "Quantize to the dual type lattice (no index space, cannot be combined with --out).",
            ),
            renormalize=(
                {"QuantizeApp": {"renormalize": True}},
                "Divide inputs by their sum, so raw histograms are accepted.",
            ),
        )
    )

    m = Int(0, help="Alphabet size; 0 takes it from the input.").tag(config=True)
    n = Int(0, help="Lattice denominator. Give exactly one of n and rate.").tag(config=True)
    rate = Int(0, help="Rate budget in bits; the largest fitting n is used.").tag(config=True)
    beta = Unicode("0", help="Bias: a rational literal, or 'auto' for 1/m.").tag(config=True)
    dual = Bool(False, help="Use the dual type lattice.").tag(config=True)
    norm = Unicode("l2", help="Norm comparing dual cosets: l1, l2, linf or kl.").tag(config=True)
    out = Unicode("", help="Write the .tqnt blob of the first distribution here.").tag(config=True)
    input_format = Unicode("", help="Input format, text or json; detected when empty.").tag(config=True)
    renormalize = Bool(False, help="Renormalize inputs.").tag(config=True)

    def choose_n(self, m):
        if bool(self.n) == bool(self.rate):
            raise UsageError("give exactly one of --n and --rate")
        if self.n:
            return self.n
        n = max_n_for_rate(m, self.rate)
        self.log.info("Rate budget %i bits at m=%i: n=%i", self.rate, m, n)
        return n

    def read_input(self):
        path = self.positional("input file")[0]
        if path == "-":
            return read_distributions(sys.stdin.read(), self.input_format or None, self.renormalize)
        return load_distributions(path, self.input_format or None, self.renormalize)

    def start(self):
        if self.dual and self.out:
            raise UsageError("the dual lattice has no index space; --dual cannot be combined with --out")
        norm = _usage(Norm.parse, self.norm)
        distributions = self.read_input()
        m = self.m or distributions[0].m
        spec = self.lattice_spec(m, self.choose_n(m), self.beta)
        if spec.is_biased and self.dual:
            raise UsageError("--dual needs beta=0")
        if self.out:
            distributions = distributions[:1]
        for p in distributions:
            if p.m != m:
                raise DistributionError("dimension mismatch: input has m=%i, expected %i" % (p.m, m))
            result = nearest(p, spec, dual=self.dual, norm=norm)
            if self.dual:
                q = result.reconstruction
                report(
                    {
                        "m": m,
                        "n": spec.n,
                        "coset": result.coset,
                        "point": result.base.counts,
                        "reconstruction": q.probs,
                        "distances": {k: distance(p, q, k) for k in ALL_NORMS},
                    }
                )
                continue
            report(
                {
                    "m": m,
                    "n": spec.n,
                    "beta": str(spec.beta),
                    "point": result.point.counts,
                    "index": rank(result.point),
                    "rate": spec.rate,
                    "reconstruction": result.reconstruction.probs,
                    "distances": result.distances,
                    "delta_applied": result.delta_applied,
                }
            )
            if self.out:
                write_blob(self.out, encode(result.point, spec))
                self.log.info("Wrote %s", self.out)


class DecodeApp(TypeQuantBase):
    name = Unicode("typequant-decode")
    description = "Decode a .tqnt blob and print the type, lattice and reconstruction."

    def start(self):
        path = self.positional("blob file")[0]
        point, spec = decode(read_blob(path))
        report(
            {
                "m": spec.m,
                "n": spec.n,
                "beta": str(spec.beta),
                "index": rank(point),
                "point": point.counts,
                "reconstruction": spec.reconstruct(point).probs,
            }
        )


class RankApp(TypeQuantBase):
    name = Unicode("typequant-rank")
    description = "Print the lexicographic index of a type given as counts, e.g. 'rank 2 1 0'."

    def start(self):
        counts = _usage(parse_counts, " ".join(self.positional("counts")))
        index = rank(counts)
        report({"m": len(counts), "n": sum(counts), "index": index, "rate": code_rate(len(counts), sum(counts))})


class UnrankApp(TypeQuantBase):
    name = Unicode("typequant-unrank")
    description = "Print the type with a given lexicographic index in Q_n."

    aliases = Dict(_aliases(m="UnrankApp.m", n="UnrankApp.n"))

    m = Int(0, help="Alphabet size.").tag(config=True)
    n = Int(0, help="Lattice denominator.").tag(config=True)

    def start(self):
        text = self.positional("index")[0]
        try:
            index = int(text)
        except ValueError:
            raise UsageError("index must be an integer, got %r" % text)
        if self.m < 2 or self.n < 1:
            raise UsageError("unrank needs --m >= 2 and --n >= 1")
        point = unrank(index, self.m, self.n)
        report({"m": self.m, "n": self.n, "index": index, "point": point.counts})


class AnalyzeApp(TypeQuantBase):
    name = Unicode("typequant-analyze")
    description = "Tabulate theoretical, in-simplex and measured covering radii of Q_n."

    aliases = Dict(_aliases(m="AnalyzeApp.m", n="AnalyzeApp.n", norm="AnalyzeApp.norms"))

    flags = Dict(
        _flags(
            json=({"AnalyzeApp": {"as_json": True}}, "Print one JSON line instead of a table."),
            **{
                "theory-only": (
                    {"AnalyzeApp": {"exhaustive": False}},
                    "Skip the exhaustive deep-hole measurement.",
                )
            }
        )
    )

    m = Int(3, help="Alphabet size.").tag(config=True)
    n = Int(2, help="Lattice denominator.").tag(config=True)
    norms = Unicode("l1,l2,linf", help="Comma-separated norms to tabulate.").tag(config=True)
    as_json = Bool(False, help="Print JSON.").tag(config=True)
    exhaustive = Bool(True, help="Measure radii over all in-simplex deep holes.").tag(config=True)

    def start(self):
        norms = [_usage(Norm.parse, s) for s in self.norms.split(",") if s.strip()]
        spec = self.lattice_spec(self.m, self.n)
        analysis = analyze(spec, norms, exhaustive=self.exhaustive)
        if self.as_json:
            report(analysis_dict(analysis))
        else:
            sys.stdout.write(format_table(analysis))


class SweepApp(TypeQuantBase):
    name = Unicode("typequant-sweep")
    description = "Write rate against worst-case distance for each scheme as CSV."

    aliases = Dict(
        _aliases(
            m="SweepApp.m",
            rate="SweepApp.rate",
            schemes="SweepApp.schemes",
            samples="SweepApp.samples",
            seed="SweepApp.seed",
            beta="SweepApp.beta",
            norm="SweepApp.norm",
            out="SweepApp.out",
        )
    )

    m = Int(5, help="Alphabet size.").tag(config=True)
    rate = Int(48, help="Rate cap in bits.").tag(config=True)
    schemes = Unicode(
        "type_lattice",
        help="Comma-separated schemes: %s." % ", ".join(s.value for s in Scheme),
    ).tag(config=True)
    samples = Int(10 ** 5, help="Monte Carlo samples per row.").tag(config=True)
    seed = Int(0, help="Seed of the Monte Carlo sample stream.").tag(config=True)
    beta = Unicode("auto", help="Bias of the biased lattice rows; 'auto' is 1/m.").tag(config=True)
    norm = Unicode("l2", help="Norm comparing dual cosets.").tag(config=True)
    out = Unicode("", help="CSV destination; stdout when empty.").tag(config=True)

    def selected_schemes(self):
        return [_usage(Scheme.parse, s) for s in self.schemes.split(",") if s.strip()]

    def start(self):
        if self.samples < 1:
            raise UsageError("--samples must be >= 1")
        if self.seed < 0:
            raise UsageError("--seed must be >= 0")
        if self.m < 2:
            raise UsageError("--m must be >= 2")
        schemes = self.selected_schemes()
        beta = _usage(lambda b: parse_fraction(b, self.m), self.beta)
        norm = _usage(Norm.parse, self.norm)
        records = run_sweep(
            self.m,
            self.rate,
            schemes=schemes,
            samples=self.samples,
            seed=self.seed,
            beta=beta,
            pool=self.pool,
            dual_norm=norm,
            statsd=self.statsd,
        )
        if self.pool is not None:
            self.pool.shutdown()
        if self.out:
            with open(self.out, "w", newline="") as f:
                write_csv(records, f)
            self.log.info("Wrote %i records to %s", len(records), self.out)
        else:
            write_csv(records, sys.stdout)


class CompareApp(SweepApp):
    name = Unicode("typequant-compare")
    description = "Sweep with both tree schemes added, for comparing against the type lattice."

    def selected_schemes(self):
        schemes = super().selected_schemes()
        for scheme in (Scheme.HUFFMAN, Scheme.GILBERT_MOORE):
            if scheme not in schemes:
                schemes.append(scheme)
        return schemes


class TypeQuant(TypeQuantBase):

    name = Unicode("typequant")
    description = "Fixed-rate quantization of probability distributions on the type lattice."

    aliases = Dict(_aliases())

    flags = Dict(
        _flags(
            **{
                "generate-config": (
                    {"TypeQuantBase": {"generate_config": True}},
                    "Generate default config file.",
                ),
                "y": (
                    {"TypeQuantBase": {"answer_yes": True}},
                    "Answer yes to any questions (e.g. confirm overwrite).",
                ),
                "yes": (
                    {"TypeQuantBase": {"answer_yes": True}},
                    "Answer yes to any questions (e.g. confirm overwrite).",
                ),
            }
        )
    )

    classes = [QuantizeApp, DecodeApp, RankApp, UnrankApp, AnalyzeApp, SweepApp, CompareApp]

    # factories give every run a fresh sub-application, not a cached singleton
    subcommands = {
        "quantize": (lambda app: QuantizeApp(parent=app), QuantizeApp.description),
        "decode": (lambda app: DecodeApp(parent=app), DecodeApp.description),
        "rank": (lambda app: RankApp(parent=app), RankApp.description),
        "unrank": (lambda app: UnrankApp(parent=app), UnrankApp.description),
        "analyze": (lambda app: AnalyzeApp(parent=app), AnalyzeApp.description),
        "sweep": (lambda app: SweepApp(parent=app), SweepApp.description),
        "compare": (lambda app: CompareApp(parent=app), CompareApp.description),
    }

    def start(self):
        if self.subapp is not None:
            return self.subapp.start()
        if self.extra_args:
            self.log.error("Unknown subcommand %r", self.extra_args[0])
        else:
            self.log.error("A subcommand is required")
        self.print_subcommands()
        self.exit(EXIT_USAGE)


def main(argv=None):
    app = TypeQuant()
    app.initialize(argv)
    log = (app.subapp or app).log
    debug = (app.subapp or app).log_level <= logging.DEBUG
    try:
        app.start()
    except UsageError as e:
        log.error("%s", e)
        app.exit(EXIT_USAGE)
    except (TypeQuantError, OSError) as e:
        log.error("%s", e, exc_info=debug)
        app.exit(EXIT_DATA)


if __name__ == "__main__":
    main()
