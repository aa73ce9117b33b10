"""OTOC decay: four-block vs five-block architectures at n = 8.

Sweeps the interferometric correlator F over circuit depth for a handful of
instances of each architecture.  The five-block circuits (causally covered
Clifford block before the first T-layer) decay toward zero after the second
T-layer; the four-block ones often keep large quantized values.  The
pure-Clifford control oscillates between -1 and +1 and never decays.
"""
from ctchaos import (
    BlockPlan,
    HeatingKind,
    HeatingSpec,
    OtocConfig,
    RngTree,
    default_otoc_operators,
    otoc_depth_sweep,
)


def sparkline(values):
    glyphs = " .:-=+*#%@"
    return "".join(glyphs[round(abs(v) * (len(glyphs) - 1))] for v in values)


def main():
    n, instances = 8, 4
    v, w = default_otoc_operators(n)
    print(f"V = {v[0].value} on qubit {v[1]}, W = {w[0].value} on qubit {w[1]}")
    print("|Re F| per measured depth ('@' = 1, ' ' = 0); T2 marks the second T-layer")
    plans = {
        "five-block": BlockPlan(5, HeatingSpec(HeatingKind.CAUSAL_RANDOM, 2)),
        "four-block": BlockPlan(4, HeatingSpec(HeatingKind.CAUSAL_RANDOM, 2)),
        "clifford": BlockPlan(
            4, HeatingSpec(HeatingKind.CAUSAL_RANDOM, 2), t_layer_size=0, init_t_layer=False
        ),
    }
    for label, plan in plans.items():
        print(f"\n{label} ----------------------------------------------")
        config = OtocConfig(v, w, plan)
        for i in range(instances):
            trace = otoc_depth_sweep(n, config, RngTree(3).child("demo").child(label).child(i))
            t2_at = trace.depths.index(trace.second_t_layer_depth)
            line = sparkline(trace.re_f)
            post = trace.post_t2_abs_re()
            print(
                f"  inst {i}: {line[:t2_at]}|T2|{line[t2_at:]}  "
                f"post-T2 mean |Re F| = {post.mean():.3f}"
            )


if __name__ == "__main__":
    main()
