# -----------------------------------------------------------------------------
#  Copyright (C) typequant Development Team
#
#  Distributed under the terms of the BSD License.  The full license is in
#  the file LICENSE.txt, distributed as part of this software.
# -----------------------------------------------------------------------------
import json

from .errors import DistributionError
from .simplex import Distribution


def default_formats():
    """
    Return the currently-implemented distribution file formats.

    - reader:
        a function(text) returning a list of lists of floats
    - writer:
        a function(rows) returning text
    - test:
        a function(text)
        truthy if the text looks like this format; used by `detect_format`.
        The format without a test is the fallback.
    """

    def read_text(text):
        rows = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rows.append([float(tok) for tok in line.replace(",", " ").split()])
            except ValueError:
                raise DistributionError("line %i: not a list of numbers: %r" % (lineno, line))
        return rows

    def write_text(rows):
        return "".join(" ".join(repr(float(x)) for x in row) + "\n" for row in rows)

    def read_json(text):
        try:
            data = json.loads(text)
        except ValueError as e:
            raise DistributionError("malformed JSON: %s" % e)
        if not isinstance(data, list):
            raise DistributionError("JSON input must be a list of numbers or a list of lists")
        if data and not isinstance(data[0], list):
            data = [data]
        if not all(isinstance(row, list) for row in data):
            raise DistributionError("JSON input must be a list of numbers or a list of lists")
        try:
            return [[float(x) for x in row] for row in data]
        except (TypeError, ValueError):
            raise DistributionError("JSON input must contain only numbers")

    def write_json(rows):
        return json.dumps([[float(x) for x in row] for row in rows]) + "\n"

    def test_json(text):
        return text.lstrip().startswith("[")

    return {
        "json": {"reader": read_json, "writer": write_json, "test": test_json},
        "text": {"reader": read_text, "writer": write_text},
    }


def detect_format(text, formats=None):
    formats = formats or default_formats()
    fallback = None
    for key, format in formats.items():
        test = format.get("test")
        if test is None:
            fallback = key
        elif test(text):
            return key
    return fallback


def read_distributions(text, format=None, renormalize=False):
    """Parse every distribution in `text`; format is detected when not given."""
    formats = default_formats()
    key = format or detect_format(text, formats)
    if key not in formats:
        raise DistributionError("unknown format %r" % (key,))
    rows = formats[key]["reader"](text)
    if not rows:
        raise DistributionError("no distribution found in input")
    return [Distribution(row, renormalize=renormalize) for row in rows]


def load_distributions(path, format=None, renormalize=False):
    with open(path, "r") as f:
        return read_distributions(f.read(), format, renormalize)


def write_distributions(distributions, format="text"):
    rows = [d.probs if isinstance(d, Distribution) else d for d in distributions]
    return default_formats()[format]["writer"](rows)
