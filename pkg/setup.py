from setuptools import setup

_version = { }

with open("puflock/_version.py", encoding="utf-8") as f:
    #pylint: disable-next=exec-used
    exec(f.read(), _version)

setup(
    name="puflock",
    version=_version["__version__"],
    description="Bind neural-network weights to a machine through PUF-derived one-time keys",
    long_description="Encrypts selected weights of a trained dense network with keys read from a " \
        "simulated XOR arbiter PUF, so the model only performs on the machine it was bound to",
    long_description_content_type="text/markdown",
    license="Apache-2.0",
    classifiers=[
        "Development Status :: 4 - Beta",

        "Intended Audience :: Science/Research",
        "Topic :: Security :: Cryptography",

        "License :: OSI Approved :: Apache Software License",

        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    keywords="puf,arbiter,neural-network,model-protection,hardware-binding",
    packages=[
        "puflock",
        "puflock._utils",
        "puflock.types",
        "puflock.puf",
        "puflock.model",
        "puflock.binding",
        "puflock.evalharness",
        "puflock.cli",
    ],
    install_requires=[
        "numpy~=1.26.3",
        "pyee~=9.0.4",
    ],
    entry_points={
        "console_scripts": [ "puflock=puflock.cli:main_entry" ],
    },
    python_requires=">=3.9"
)
