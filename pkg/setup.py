from setuptools import find_packages, setup


with open('README.md') as file:
    long_description = file.read()


setup(
    name='lexversion',
    description='Point-in-time versioning of legal norms',
    version='0.0.1',
    extras_require={'test': ['pytest']},
    install_requires=[
        'numpy',
        'pyrsistent',
        'pyyaml',
        'rdflib>=6',
        'tqdm',
        'yapecs',
    ],
    python_requires='>=3.10',
    packages=find_packages(exclude=['test']),
    package_data={'lexversion': ['assets/*', 'assets/*/*']},
    entry_points={
        'console_scripts': ['lexversion=lexversion.cli:main']},
    long_description=long_description,
    long_description_content_type='text/markdown',
    keywords=['law', 'legislation', 'lrmoo', 'urn-lex', 'versioning'],
    classifiers=['License :: OSI Approved :: MIT License'],
    license='MIT')
