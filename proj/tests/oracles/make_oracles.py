"""Reference values for the C++ unit tests.

Datasets are closed-form sequences so the C++ side rebuilds them exactly.
Run with scipy and statsmodels installed; paste the output into
tests/oracle_values.hpp.
"""
import math

import numpy as np
from scipy import stats
from statsmodels.stats.diagnostic import lilliefors, normal_ad


def wave(n, a=0.3, b=1.7):
    return np.array([math.log(1.0 + i) + a * math.sin(b * i) for i in range(1, n + 1)])


def skewed(n):
    return np.array([math.exp(1.5 * math.sin(i)) for i in range(1, n + 1)])


def heavy(n):
    return np.array([math.tan(math.pi * (((i * 0.6180339887498949) % 1.0) - 0.5)) for i in range(1, n + 1)])


def durations(n):
    return np.array([math.exp(0.5 + 0.6 * math.sin(2.3 * i) + 0.2 * math.cos(0.7 * i)) for i in range(1, n + 1)])


def nortest_p(d, n):
    # Dallal-Wilkinson with Stephens' modified statistic above 0.1.
    kd, nd = d, n
    if n > 100:
        kd = d * (n / 100.0) ** 0.49
        nd = 100
    p = math.exp(-7.01256 * kd * kd * (nd + 2.78019) + 2.99587 * kd * math.sqrt(nd + 2.78019) - 0.122119
                 + 0.974598 / math.sqrt(nd) + 1.67997 / nd)
    if p > 0.1:
        kk = (math.sqrt(n) - 0.01 + 0.85 / math.sqrt(n)) * d
        if kk <= 0.302:
            p = 1.0
        elif kk <= 0.5:
            p = 2.76773 - 19.828315 * kk + 80.709644 * kk ** 2 - 138.55152 * kk ** 3 + 81.218052 * kk ** 4
        elif kk <= 0.9:
            p = -4.901232 + 40.662806 * kk - 97.490286 * kk ** 2 + 94.029866 * kk ** 3 - 32.355711 * kk ** 4
        elif kk <= 1.31:
            p = 6.198765 - 19.558097 * kk + 23.186922 * kk ** 2 - 12.897002 * kk ** 3 + 2.62432 * kk ** 4
        else:
            p = 0.0
    return p


def r(x):
    return repr(float(x))


print("// shapiro-wilk: scipy.stats.shapiro")
cases = [("quantiles10", np.array([-1.64, -1.04, -0.67, -0.39, -0.13, 0.13, 0.39, 0.67, 1.04, 1.64]))]
cases += [(f"wave{n}", wave(n)) for n in (3, 4, 5, 8, 11, 20, 50, 120, 600, 3000)]
cases += [("skewed40", skewed(40)), ("heavy200", heavy(200))]
for name, x in cases:
    w, p = stats.shapiro(x)
    print(f'{{"{name}", {r(w)}, {r(p)}}},')

print("// anderson-darling: statsmodels normal_ad")
for name, x in cases:
    if len(x) < 8:
        continue
    a2, p = normal_ad(x)
    print(f'{{"{name}", {r(a2)}, {r(p)}}},')

print("// lilliefors: statsmodels D, statsmodels approx p when < 0.1, else nortest formula")
for name, x in cases:
    if len(x) < 8:
        continue
    d, p = lilliefors(x, dist="norm", pvalmethod="approx")
    ref = p if p < 0.1 else nortest_p(d, len(x))
    print(f'{{"{name}", {r(d)}, {r(ref)}, {r(nortest_p(d, len(x)))}}},')

print("// chi-square: scipy.stats.chisquare")
for counts in ([25, 10, 10, 10, 15], [10, 10, 10, 10], [3, 9, 4, 12, 7, 5, 1]):
    s, p = stats.chisquare(counts)
    print(f"{{{counts}, {r(s)}, {r(p)}}},")
s, p = stats.chisquare([30, 12, 9, 14, 11], f_exp=np.array([3, 1, 1, 1, 1]) / 7 * 76)
print("pooled", r(s), r(p))

print("// welch: scipy.stats.ttest_ind(equal_var=False)")
a = wave(12)
b = wave(17, 0.5, 0.9) + 0.4
t, p = stats.ttest_ind(a, b, equal_var=False)
print("welch", r(t), r(p))
t, p = stats.ttest_ind(skewed(9), heavy(30), equal_var=False)
print("welch2", r(t), r(p))

print("// distributions: scipy")
fams = {
    "gamma": (stats.gamma(2.5, scale=0.8), [2.5, 0.8]),
    "lognormal": (stats.lognorm(math.sqrt(0.3), scale=math.exp(0.4)), [0.4, 0.3]),
    "normal": (stats.norm(1.2, math.sqrt(2.0)), [1.2, 2.0]),
    "cauchy": (stats.cauchy(0.5, 1.5), [0.5, 1.5]),
    "logistic": (stats.logistic(-0.3, 0.7), [-0.3, 0.7]),
    "student_t": (stats.t(4.5, 1.0, 0.6), [1.0, 0.6, 4.5]),
    "weibull": (stats.weibull_min(1.7, scale=2.2), [1.7, 2.2]),
}
for name, (d, params) in fams.items():
    for x in (0.3, 1.1, 2.9):
        print(f'{{"{name}", {params}, {x}, {r(d.pdf(x))}, {r(d.cdf(x))}}},')
    for q in (0.05, 0.5, 0.975):
        print(f'  q {name} {q} {r(d.ppf(q))}')

print("// fits: scipy MLE on durations(300)")
x = durations(300)
fits = {
    "gamma": stats.gamma.fit(x, floc=0),
    "weibull": stats.weibull_min.fit(x, floc=0),
    "cauchy": stats.cauchy.fit(x),
    "logistic": stats.logistic.fit(x),
    "student_t": stats.t.fit(x),
}
ll = {
    "gamma": stats.gamma.logpdf(x, *fits["gamma"]).sum(),
    "weibull": stats.weibull_min.logpdf(x, *fits["weibull"]).sum(),
    "cauchy": stats.cauchy.logpdf(x, *fits["cauchy"]).sum(),
    "logistic": stats.logistic.logpdf(x, *fits["logistic"]).sum(),
    "student_t": stats.t.logpdf(x, *fits["student_t"]).sum(),
}
for k in fits:
    print(k, [r(v) for v in fits[k]], r(ll[k]))
lx = np.log(x)
print("lognormal", r(lx.mean()), r(lx.var()), r(stats.lognorm.logpdf(x, math.sqrt(lx.var()), scale=math.exp(lx.mean())).sum()))
print("normal", r(x.mean()), r(x.var()), r(stats.norm.logpdf(x, x.mean(), math.sqrt(x.var())).sum()))

print("// student-t and cauchy fits on t3 quantile data")
n = 300
y = np.array([5.0 + 0.5 * stats.t.ppf((i - 0.5) / n, 3) for i in range(1, n + 1)])
ft = stats.t.fit(y)
print("t3", [r(v) for v in ft], r(stats.t.logpdf(y, *ft).sum()))
fc = stats.cauchy.fit(y)
print("cauchy_t3", [r(v) for v in fc], r(stats.cauchy.logpdf(y, *fc).sum()))
