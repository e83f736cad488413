"""Regenerate the golden SVG fixture (deliberate action, then eyeball the
diff before committing)."""

from pathlib import Path

from josephson import ScanGrid, render_svg, scan_plane

OUT = Path(__file__).parent / "golden" / "scan20.svg"


def main():
    grid = ScanGrid(a_min=-3.0, a_max=3.0, a_steps=20, b_min=0.0, b_max=4.0,
                    b_steps=20, mu=0.4)
    cells = scan_plane(grid)
    OUT.parent.mkdir(exist_ok=True)
    OUT.write_text(render_svg(cells=cells, mu=0.4, k_lines=range(-4, 5)))
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
