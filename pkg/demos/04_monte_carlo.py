"""A small bias / std / RMSE table comparing both estimators.

Replication r draws from its own (seed, r) stream, so the table is the same
whatever the number of workers.
"""

from multiwhittle.bench import BenchConfig, run_benchmark, summarize

config = BenchConfig(d=(0.2, 0.4), rho=0.8, n=512, reps=100, seed=0, methods=("mww", "mfw"), j0=1, m=57)
rows = summarize(run_benchmark(config))

print(f"{'method':<6} {'param':<12} {'bias':>8} {'std':>8} {'rmse':>8} {'M/U':>7} {'W/F':>7}")
for r in rows:
    fmt = lambda v: f"{v:7.3f}" if v is not None else "      -"
    print(f"{r['method']:<6} {r['parameter']:<12} {r['bias']:8.4f} {r['std']:8.4f} {r['rmse']:8.4f} "
          f"{fmt(r['ratio_mu'])} {fmt(r['ratio_wf'])}")

# Full-size tables:  multiwhittle bench --d 0.2,0.4 --reps 500 --methods mww,mfw --m 57 --workers 4
