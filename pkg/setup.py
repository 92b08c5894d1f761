import setuptools

import tempograph

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="tempograph",
    version=tempograph.__version__,
    author=tempograph.__author__,
    description="Temporal knowledge graph evolution and multi-hop question answering",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    package_dir={"": "."},
    packages=[
        "tempograph",
        "tempograph.embed",
        "tempograph.eval",
        "tempograph.evolve",
        "tempograph.fixtures",
        "tempograph.graph",
        "tempograph.oracle",
        "tempograph.reason",
        "tempograph.types",
    ],
    package_data={
        "tempograph": ["oracle/prompts/*.txt"],
    },
    entry_points={
        "console_scripts": ["tempograph=tempograph.tempograph_main:main"],
    },
    python_requires=">=3.8",
    install_requires=["numpy>=1.21", "requests~=2.28"],
)
