from setuptools import setup, find_packages

with open('README.md') as readme_file:
    readme = readme_file.read()

exec(open('tropico/version.py').read()) # loads __version__

setup(name='tropico',
      version=__version__,
      description='tropico counts curves on toric surfaces with floor diagrams and computes with plane tropical curves',
      long_description_content_type='text/markdown',
      long_description=readme,
      license='GPL3+',
      keywords=["tropical geometry", "floor diagrams", "enumerative geometry", "lattice polygons",
                "Severi degrees"],
      include_package_data=True,
      packages=find_packages(exclude=['docs', 'test']),
      python_requires='>=3.8',
      install_requires=('numpy>=1.17.0',
                        'networkx>=2.5',
                        'pandas>=1.0.0',
                        'sympy>=1.6'),
      test_suite='test',
      scripts=['bin/tropico']
)
