from setuptools import setup, find_packages

setup(
    name="curvalpha",
    version="1.0.0",
    packages=find_packages(include=["curvalpha*"]),
    package_data={"curvalpha": ["schemas/*.json"]},
    install_requires=[
        "click>=8.0.0",
        "jsonschema>=4.0.0",
        "numpy>=1.24.0",
        "pydantic>=2.0.0",
        "pyyaml>=6.0",
        "sympy>=1.12",
    ],
    entry_points={
        'console_scripts': [
            'curvalpha=curvalpha.cli:main',
        ],
    },
)
