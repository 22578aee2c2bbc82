"""Fractional author credit and the three per-scientist indicators.

A publication's standardized score is split across its byline. The default is
an equal split; disciplines where byline order matters (life sciences) use a
positional scheme driven by the boundary authors' affiliations:

* first and last share a university  -> 40% each, middle authors split 20%;
* first two and last two all differ  -> 30% / 15% / ... / 15% / 30%,
  everyone else splitting 10%;
* anything else (or missing data)    -> equal split.
"""

from rankmetrics import WeightScheme, byline_case_flags, coauthor_weights
from rankmetrics.baseline import build_baselines
from rankmetrics.indicators import compute_indicators
from rankmetrics.synth import SynthConfig, generate

for n in (1, 2, 4, 6):
    w = coauthor_weights(n, WeightScheme.POSITIONAL, first_last_same=True)
    print(f"n={n} shared first/last:   {[round(x, 4) for x in w]}")
for n in (4, 6):
    w = coauthor_weights(n, WeightScheme.POSITIONAL, boundary_pairs_differ=True)
    print(f"n={n} distinct boundaries: {[round(x, 4) for x in w]}")

# The flags come straight from affiliation identifiers in byline order.
print("\npattern detection:")
for byline in (["U1", "U2", "U1"], ["U1", "U2", "U3", "U4"], ["U1", None, "U3", "U4"]):
    print(f"  {byline} -> first_last_same={byline_case_flags(byline)[0]}, "
          f"boundary_pairs_differ={byline_case_flags(byline)[1]}")

# End to end: N_p counts publications, QI averages standardized scores, FSS
# sums score x own-position weight. UDA02 uses the positional scheme here.
corpus = generate(SynthConfig(seed=3, n_uda=2, sds_per_uda=1))
records = compute_indicators(corpus, build_baselines(corpus), positional_udas=["UDA02"])

active = [r for r in records.values() if r.n_p > 0]
idle = [r for r in records.values() if r.n_p == 0]
print(f"\n{len(active)} active scientists, {len(idle)} without publications")
best = max(active, key=lambda r: r.fss)
print(f"strongest scientist: n_p={best.n_p}, qi={best.qi:.2f}, fss={best.fss:.2f}")
print(f"inactive scientists report qi=ABSENT, fss=0: {idle[0].qi is None and idle[0].fss == 0.0}")
