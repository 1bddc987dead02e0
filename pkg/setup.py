"""
Installs rspin-graphs and its dependencies

    pip install .            # the library and the rspin command
    pip install .[test]      # plus the test suite's requirements
"""

from setuptools import setup

setup(
    name="rspin-graphs",
    version="1.0.0",
    description="Combinatorics of graded r-spin disk moduli: dual graphs, point insertion and glued cell complexes",
    python_requires=">=3.8",
    py_modules=[
        "core",
        "dual_graph",
        "spin",
        "isomorphism",
        "degeneration",
        "point_insertion",
        "orientation",
        "gluing",
        "instance_router",
        "document",
        "view",
        "app",
    ],
    install_requires=["networkx>=2.5"],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["rspin=app:main"]},
)
