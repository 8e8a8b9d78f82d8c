"""Optional matplotlib output shared by the demo scripts."""
import pathlib

OUT = pathlib.Path(__file__).parent / "figures"


def pyplot():
    """Return ``matplotlib.pyplot`` with a file backend, or None when absent."""
    try:
        import matplotlib
    except ImportError:
        return None
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save(fig, name):
    OUT.mkdir(exist_ok=True)
    path = OUT / name
    fig.savefig(path, dpi=120, bbox_inches="tight")
    print(f"wrote {path}")
