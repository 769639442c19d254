"""Print the small worked examples on every backend.

    python3 scripts/worked_examples.py
"""

from __future__ import annotations

from dataclasses import dataclass, field

from lazydist.core import Session
from lazydist.models import (
    all_five_or_six,
    all_six,
    consecutive_bs_q,
    flip_coin_heads,
    get_backend,
    palindrome_efficient_q,
    palindrome_q,
    sprinkler_queries,
)


@dataclass
class ExamplesConfig:
    backends: list[str] = field(default_factory=lambda: ["lazy", "strict", "list"])
    dice: int = 3
    string_length: int = 5
    coins: int = 4


def main(cfg: ExamplesConfig = ExamplesConfig()):
    for name in cfg.backends:
        print(f"[{name}]")
        with Session():
            b = get_backend(name)
            rows = {
                f"allSix {cfg.dice}": all_six(b, cfg.dice),
                f"allFiveOrSix {cfg.dice}": all_five_or_six(b, cfg.dice),
                f"palindrome {cfg.string_length}": palindrome_q(b, cfg.string_length),
                f"palindrome (ends first) {cfg.string_length}": palindrome_efficient_q(b, cfg.string_length),
                f"consecutive bs {cfg.string_length}": consecutive_bs_q(b, cfg.string_length),
                f"at least two heads of {cfg.coins}": flip_coin_heads(b, cfg.coins),
            }
            rows.update(sprinkler_queries(b))
        for label, p in rows.items():
            print(f"  {label:32s} {p!r}")


if __name__ == "__main__":
    main()
