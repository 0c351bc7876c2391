"""Standard small-group presentations used as test fixtures: every group of
order 8 and of order 16, in the positive-word file format."""

ORDER8 = {
    "C8": "group C8\ngens 1\nrel f1f1f1f1f1f1f1f1\n",
    "C4xC2": "group C4xC2\ngens 2\nrel f1f1f1f1\nrel f2f2\nrel f1f2f1f1f1f2\n",
    "C2^3": ("group C2^3\ngens 3\nrel f1f1\nrel f2f2\nrel f3f3\n"
             "rel f1f2f1f2\nrel f1f3f1f3\nrel f2f3f2f3\n"),
    "D8": "group D8\ngens 2\nrel f1f1f1f1\nrel f2f2\nrel f2f1f2f1\n",
    "Q8": "group Q8\ngens 2\nrel f1f1f1f1\nrel f2f2f1f1\nrel f2f1f2f2f2f1\n",
}

_X8 = "f1f1f1f1f1f1f1f1"

ORDER16 = {
    "C16": "group C16\ngens 1\nrel " + "f1" * 16 + "\n",
    "C4xC4": "group C4xC4\ngens 2\nrel f1f1f1f1\nrel f2f2f2f2\nrel f1f2f1f1f1f2f2f2\n",
    "C8xC2": f"group C8xC2\ngens 2\nrel {_X8}\nrel f2f2\nrel f1f2f1f1f1f1f1f1f1f2\n",
    "C4xC2^2": ("group C4xC2^2\ngens 3\nrel f1f1f1f1\nrel f2f2\nrel f3f3\n"
                "rel f1f2f1f1f1f2\nrel f1f3f1f1f1f3\nrel f2f3f2f3\n"),
    "C2^4": ("group C2^4\ngens 4\n" +
             "".join(f"rel f{i}f{i}\n" for i in range(1, 5)) +
             "".join(f"rel f{i}f{j}f{i}f{j}\n"
                     for i in range(1, 5) for j in range(i + 1, 5))),
    "D16": f"group D16\ngens 2\nrel {_X8}\nrel f2f2\nrel f2f1f2f1\n",
    "QD16": f"group QD16\ngens 2\nrel {_X8}\nrel f2f2\nrel f2f1f2f1f1f1f1f1\n",
    "Q16": (f"group Q16\ngens 2\nrel {_X8}\nrel f2f2f1f1f1f1\n"
            "rel f2f1f2f1f1f1f1f1\n"),
    "M16": f"group M16\ngens 2\nrel {_X8}\nrel f2f2\nrel f2f1f2f1f1f1\n",
    "C2xD8": ("group C2xD8\ngens 3\nrel f1f1f1f1\nrel f2f2\nrel f2f1f2f1\n"
              "rel f3f3\nrel f1f3f1f1f1f3\nrel f2f3f2f3\n"),
    "C2xQ8": ("group C2xQ8\ngens 3\nrel f1f1f1f1\nrel f2f2f1f1\n"
              "rel f2f1f2f2f2f1\nrel f3f3\nrel f1f3f1f1f1f3\nrel f2f3f2f1f1f3\n"),
    "C4:C4": "group C4:C4\ngens 2\nrel f1f1f1f1\nrel f2f2f2f2\nrel f2f1f2f2f2f1\n",
    "(C4xC2):C2": ("group (C4xC2):C2\ngens 3\nrel f1f1f1f1\nrel f2f2\nrel f3f3\n"
                   "rel f1f2f1f1f1f2\nrel f3f1f3f2f1f1f1\nrel f2f3f2f3\n"),
    "D8oC4": ("group D8oC4\ngens 3\nrel f1f1f1f1\nrel f2f2\nrel f2f1f2f1\n"
              "rel f3f3f1f1\nrel f1f3f1f1f1f3f1f1\nrel f2f3f2f3f1f1\n"),
}
