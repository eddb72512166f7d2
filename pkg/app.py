"""
Exact computations with finite-dimensional Hom-algebras.
Entry point – run with:  python app.py COMMAND [options]
"""
from homnr.main import run

if __name__ == "__main__":
    run()
