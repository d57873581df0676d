"""Sweeping the constructions for sparse permutations and summarizing the log."""

# %%
from pathlib import Path
import tempfile

from permpoly import SearchConfig, SearchStats, run_search, summarize

HERE = Path(__file__).resolve().parent

# %%
config = SearchConfig.from_file(HERE / "demo_search.yaml")
print(config)

# %%
stats = SearchStats()
with tempfile.TemporaryDirectory() as tmp:
    log = Path(tmp) / "findings.jsonl"
    findings = list(run_search(config, stats, output=log))
    print(len(findings), "findings;", stats.tuples_examined, "multiplier tuples examined")
    print(log.read_text().splitlines()[0])

    # %%
    print(summarize(log).render())
