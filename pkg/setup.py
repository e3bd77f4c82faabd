"""
RIS Secure Location Modulation
Near-field physical-layer security simulator for reconfigurable intelligent surfaces
"""

from setuptools import setup, find_packages
from pathlib import Path

this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding='utf-8')

setup(
    name="ris-secure-location-modulation",
    version="1.0.0",
    author="Gabriel Demetrios Lafis",
    author_email="",
    description="Secure Location Modulation simulator for RIS-assisted near-field physical-layer security",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/galafis/ris-secure-location-modulation",
    packages=find_packages(exclude=["tests"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.22.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "ris-slm=src.cli_sweep:main",
        ],
    },
    keywords="ris, metasurface, near-field, beam-focusing, beam-nulling, physical-layer-security, evm, ber",
    project_urls={
        "Bug Reports": "https://github.com/galafis/ris-secure-location-modulation/issues",
        "Source": "https://github.com/galafis/ris-secure-location-modulation",
        "Documentation": "https://github.com/galafis/ris-secure-location-modulation/blob/main/README.md",
    },
)
