"""
Canonical JSON and the polynomial oracle
========================================

Elements serialize to canonical JSON. Over a fixed set of chain points a
series is a Laurent polynomial, which gives an independent check of the
arithmetic.
"""

from hahnexp import generators
from hahnexp.errors import ParseError
from hahnexp.oracle import check_oracle
from hahnexp.serialize import dumps, parse_series, round_trip
from hahnexp.series_field import t

text = dumps(t(-1, 2) + 1)
print(text)
print("round trip is byte-identical:", round_trip(text) == text)

# unsorted input is rejected unless lenient parsing is asked for
unsorted = ('{"terms": [{"exp": {"terms": [{"idx": "0", "coef": "1"}]}, "coef": "1"},'
            ' {"exp": {"terms": []}, "coef": "1"}], "trunc": null}')
try:
    parse_series(unsorted)
except ParseError as exc:
    print("rejected:", exc)
print("lenient:", parse_series(unsorted, lenient=True))

rng = generators.make_rng(5)
pairs = []
for _ in range(200):
    points = generators.chain_points(rng, 3)
    pairs.append((generators.random_series(rng, points), generators.random_series(rng, points)))
report = check_oracle(pairs)
print(f"oracle agreement: {report.passes}/{report.instances}")
