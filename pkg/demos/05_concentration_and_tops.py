"""Inequality of output, top scientists, and excellence-vs-rank association.

Output is concentrated: a Gini coefficient near 1 or a bottom-40%/top-20%
ratio near 0 means a few scientists produce most of the impact. The
top-scientist analysis asks whether senior ranks are over-represented among
the best 20% of each field, normalizing by staff shares (concentration index,
1 = neutral) and testing the association with a Pearson chi-square.
"""

from rankmetrics import Indicator, Rank, bottom_top_ratio, gini
from rankmetrics.analysis import concentration_rows, top_distribution
from rankmetrics.baseline import build_baselines
from rankmetrics.indicators import compute_indicators
from rankmetrics.ranking import top_scientists
from rankmetrics.synth import SynthConfig, generate

print("gini([equal]) =", gini([4, 4, 4, 4]))
print("gini([0,...,0,1]) with n=100 =", gini([0] * 99 + [1]))
print("bottom/top on a uniform population =", bottom_top_ratio([5.0] * 20))
print("bottom/top on a single spike =", bottom_top_ratio([0, 0, 0, 0, 10]))

corpus = generate(SynthConfig(seed=8, n_uda=3, sds_per_uda=3))
records = compute_indicators(corpus, build_baselines(corpus))

print("\nconcentration of FSS by UDA and rank (field-weighted):")
rows = concentration_rows(records, corpus, Indicator.FSS)
for (uda, rank), row in sorted(rows.items(), key=lambda kv: (kv[0][0], kv[0][1].value)):
    ratio = "undefined" if row.bottom_top_ratio is None else f"{row.bottom_top_ratio:.3f}"
    print(f"  {uda} {rank.value:<10} gini={row.gini:.3f}  bottom/top={ratio}")

flags = top_scientists(records, Indicator.FSS, corpus, fraction=0.2)
dist = top_distribution(flags, corpus, Indicator.FSS)
print(f"\ntop scientists flagged: {sum(f.is_top for f in flags)} of {len(flags)}")
print("share of top scientists by rank, concentration index in brackets:")
for rank in Rank:
    share = dist.top_share(None, rank)
    index = dist.index(None, rank)
    print(f"  {rank.value:<10} {share:5.1f}% ({index:.2f})")

chi = dist.chi_square_overall
print(f"\nexcellence vs rank: chi2={chi.statistic:.2f}, df={chi.degrees_of_freedom}, "
      f"p={chi.p_value:.4f}")
