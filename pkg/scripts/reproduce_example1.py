"""Print the three-state hedging example with exact rational arithmetic."""

from cptlab import example1
from cptlab.integration import CptParams, choquet, sipos
from cptlab.elicitation import prefers


def main():
    v, acts = example1.capacity(), example1.acts()
    print(f"{'act':<5} {'payoffs':<14} {'Choquet':>8} {'Šipoš':>8}")
    for name in ("f", "g", "h", "f+h", "g+h"):
        a = acts[name]
        pay = "(" + ", ".join(str(x) for x in a.payoffs) + ")"
        print(f"{name:<5} {pay:<14} {str(choquet(a, v)):>8} {str(sipos(a, v)):>8}")
    for label, p in (("Choquet", CptParams.choquet(v)), ("Šipoš", CptParams.sipos(v))):
        print(f"{label}: f vs g -> {prefers(acts['f'], acts['g'], p).value}, "
              f"f+h vs g+h -> {prefers(acts['f+h'], acts['g+h'], p).value}")


if __name__ == "__main__":
    main()
