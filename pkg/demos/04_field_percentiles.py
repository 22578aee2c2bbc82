"""Percentile rankings within fields and the rank-dominance criterion.

Indicator values are only comparable inside an SDS, so every scientist gets a
national percentile there (0 worst, 100 best, ties at midranks). Aggregating
percentiles by UDA and academic rank gives the rank-comparison tables, and
the pooled rank-sum criterion decides, field by field, which of two ranks
sits higher overall.
"""

from rankmetrics import Indicator, Rank, sequence_criterion
from rankmetrics.analysis import dominance_counts
from rankmetrics.baseline import build_baselines
from rankmetrics.indicators import compute_indicators
from rankmetrics.ranking import sds_percentiles, uda_rank_average
from rankmetrics.synth import SynthConfig, generate

# The generator plants a FULL > ASSOCIATE > ASSISTANT productivity effect.
corpus = generate(SynthConfig(seed=4))
records = compute_indicators(corpus, build_baselines(corpus))

percentiles = sds_percentiles(records, Indicator.FSS, corpus)
table = uda_rank_average(percentiles, corpus)
print("mean FSS percentile by rank (pooled over all UDAs):")
for rank in Rank:
    print(f"  {rank.value:<10} {table.mean(None, rank):6.2f}  (n={table.cell(None, rank).count})")

# The dominance criterion on two hand-made groups: distances to the ideal
# "every member of my group outranks every member of yours" configuration.
res = sequence_criterion([9.0, 7.5, 6.0], [5.0, 2.0], group_a="seniors", group_b="juniors")
print(f"\nhand-made comparison: r_diff_a={res.r_diff_a}, r_diff_b={res.r_diff_b}, "
      f"winner={res.winner} (identity: {res.r_diff_a + res.r_diff_b} == 3*2)")

# Counting fields where assistants outrank full professors:
counts = dominance_counts(records, corpus, Indicator.FSS, Rank.FULL, Rank.ASSISTANT)
wins, counted = counts.total
print(f"\nassistants outrank full professors in {wins} out of {counted} fields")
for uda, (w, c) in sorted(counts.per_uda.items()):
    print(f"  {uda}: {w} out of {c}")
