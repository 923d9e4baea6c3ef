"""
Checking the hand-written gradients
===================================

Compare every analytic partial derivative with a central difference on a
few random networks and parameter sets.
"""

from msgcn import gradient_check

results = gradient_check(seed=0, instances=3)
failed = [r for r in results if not r.ok and not r.kink]
print(f"{len(results)} partials checked, {len(failed)} mismatches")

worst = max(results, key=lambda r: abs(r.analytic - r.numeric))
print(f"largest gap: {worst.parameter}{list(worst.index)} analytic {worst.analytic:.8g} numeric {worst.numeric:.8g}")
