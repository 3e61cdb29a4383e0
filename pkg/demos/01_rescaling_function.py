# %% [markdown]
# # The time-rescaling function
#
# A protocol of duration ``t_f`` is compressed to ``t_f / a`` by running the
# reference clock as ``f(t)``.  The rate ``f'(t)`` starts and ends at 1 and
# peaks at ``2a - 1`` halfway through.

# %%
import numpy as np

from trlindblad import TimeRescaling

t_f = 5.0
for a in (1.0, 2.0, 10.0):
    tr = TimeRescaling(a, t_f)
    tau = np.linspace(0, tr.duration, 6)
    print(f"a = {a:g}: duration {tr.duration:g}, peak f' = {tr.peak_amplification:g}")
    print("   tau  ", np.round(tau, 4))
    print("   f    ", np.round(tr.f(tau), 4))
    print("   f'   ", np.round(tr.f_dot(tau), 4))

# %% [markdown]
# ``f_inverse`` answers the question "when does the fast process reach the
# reference time ``t``?".  Reaching the halfway point takes exactly
# ``t_f / (2a)``; other stages are not simply divided by ``a``.

# %%
tr = TimeRescaling(10.0, t_f)
for stage in (0.1, 0.25, 0.5, 0.75, 1.0):
    t = stage * t_f
    print(f"stage {stage:4.2f}: reference t = {t:5.3f}, rescaled t = {tr.f_inverse(t):.6f}")

# %% [markdown]
# Values of ``a`` at or below 1/2 would make ``f'`` vanish somewhere and are
# rejected.  ``1/2 < a < 1`` slows the protocol down and must be requested
# explicitly.

# %%
slow = TimeRescaling(0.75, t_f, allow_slowdown=True)
print("slow-down duration:", slow.duration)
try:
    TimeRescaling(0.4, t_f)
except ValueError as exc:
    print("rejected:", exc)
