"""Write tests/data/doi_cases.json: 50 positive and 50 negative DOI extraction cases."""
import json
pos = [
 # free text
 ("text", "See doi:10.1038/nature12373 for details.", "10.1038/nature12373"),
 ("text", "The study (https://doi.org/10.1136/bmj.g3437) was published today.", "10.1136/bmj.g3437"),
 ("text", "Available at http://dx.doi.org/10.1016/S0140-6736(14)60460-8.", "10.1016/s0140-6736(14)60460-8"),
 ("text", "DOI: 10.1371/journal.pone.0123456", "10.1371/journal.pone.0123456"),
 ("text", "doi:10.1192/bjp.bp.114.153494,", "10.1192/bjp.bp.114.153494"),
 ("text", "Reference: 10.1126/science.aaa1234;", "10.1126/science.aaa1234"),
 ("text", "[10.1093/brain/awu123]", "10.1093/brain/awu123"),
 ("text", "\"10.1002/anie.201403456\"", "10.1002/anie.201403456"),
 ("text", "published as 10.1111/j.1365-2486.2012.02761.x in the journal", "10.1111/j.1365-2486.2012.02761.x"),
 ("text", "https://doi.org/10.1007/978-3-319-24277-4_9", "10.1007/978-3-319-24277-4_9"),
 ("text", "urn:doi:10.1103/PhysRevLett.116.061102", "10.1103/physrevlett.116.061102"),
 ("text", "info:doi/10.1145/2939672.2939785", "10.1145/2939672.2939785"),
 ("text", "DOI:10.1080/14786419.2014.999999.", "10.1080/14786419.2014.999999"),
 ("text", "(doi: 10.1001/jama.2014.12345)", "10.1001/jama.2014.12345"),
 ("text", "The paper 10.3389/fpsyg.2015.00001: a review", "10.3389/fpsyg.2015.00001"),
 ("text", "https://www.doi.org/10.1017/S0033291714002591", "10.1017/s0033291714002591"),
 ("text", "Read it at https://doi.org/10.5281/zenodo.1234567'", "10.5281/zenodo.1234567"),
 ("text", "10.1186/s12889-015-1234-5 describes the cohort.", "10.1186/s12889-015-1234-5"),
 ("text", "doi 10.1056/NEJMoa1409123", "10.1056/nejmoa1409123"),
 ("text", "Link: https://doi.org/10.1098/rsbl.2014.0123}", "10.1098/rsbl.2014.0123"),
 ("text", "Cite as doi:10.12688/f1000research.2-123.v2.", "10.12688/f1000research.2-123.v2"),
 ("text", "Lethaia, doi:10.1111/let.12123 (2015).", "10.1111/let.12123"),
 ("text", "Accessed via HTTPS://DOI.ORG/10.1093/ANNONC/MDU123", "10.1093/annonc/mdu123"),
 ("text", "see 10.1016/j.cell.2014.05.010\nfor more", "10.1016/j.cell.2014.05.010"),
 ("text", "doi:10.1000.10/abc123", "10.1000.10/abc123"),
 ("text", "(10.1039/c4cc01234a)", "10.1039/c4cc01234a"),
 ("text", "[see 10.1093/nar/gku123].", "10.1093/nar/gku123"),
 ("text", "The preprint 10.1101/2020.03.01.123456 appeared in March.", "10.1101/2020.03.01.123456"),
 ("text", "dx.doi.org/10.1177/0956797614531234", "10.1177/0956797614531234"),
 ("text", "Journal reference doi:10.1073/pnas.1401234111; press release.", "10.1073/pnas.1401234111"),
 # publisher HTML
 ("html", '<html><head><meta name="citation_doi" content="10.1136/bmj.h1234"></head></html>', "10.1136/bmj.h1234"),
 ("html", '<meta name="citation_doi" content="doi:10.1038/NCOMMS5123">', "10.1038/ncomms5123"),
 ("html", '<META NAME="citation_doi" CONTENT="https://doi.org/10.1016/j.neuron.2014.01.001">', "10.1016/j.neuron.2014.01.001"),
 ("html", '<meta name="dc.identifier" content="10.1192/bjp.bp.114.153494">', "10.1192/bjp.bp.114.153494"),
 ("html", '<meta name="DC.Identifier" content="doi:10.1111/let.12123"/>', "10.1111/let.12123"),
 ("html", '<meta name="prism.doi" content="10.1371/journal.pmed.1001234">', "10.1371/journal.pmed.1001234"),
 ("html", '<meta property="citation_doi" content="10.1001/jama.2015.1">', "10.1001/jama.2015.1"),
 ("html", '<meta name="dc.identifier" content="10.2/second"><meta name="citation_doi" content="10.1/first">', "10.1/first"),
 ("html", '<meta name="prism.doi" content="10.3/third"><meta name="dc.identifier" content="10.2/second">', "10.2/second"),
 ("html", '<meta name="dc.identifier" content="ISBN 978-0-12"><meta name="prism.doi" content="10.4/fourth">', "10.4/fourth"),
 ("html", '<body><a href="https://doi.org/10.9/z">full text</a></body>', "10.9/z"),
 ("html", '<a href="http://dx.doi.org/10.1093%2Fbrain%2Fawu123">link</a>', "10.1093/brain/awu123"),
 ("html", '<a href="/about">About</a><a href="https://doi.org/10.1126/science.1251234?utm=x#top">paper</a>', "10.1126/science.1251234"),
 ("html", '<meta name="citation_title" content="x"><meta name="citation_doi" content=" 10.1098/RSPB.2014.1234 ">', "10.1098/rspb.2014.1234"),
 ("html", '<meta name="citation_doi" content="10.1/a">', "10.1/a"),
 ("html", '<meta name="citation_doi" content="10.7554/eLife.01234"/><a href="https://doi.org/10.0/other">x</a>', "10.7554/elife.01234"),
 ("html", '<meta name="citation_doi" content="not a doi"><a href="https://doi.org/10.1056/NEJMoa1401234">x</a>', "10.1056/nejmoa1401234"),
 ("html", '<head><meta name="citation_doi" content="10.1186/1471-2458-14-123"></head><body><p>doi:10.9999/ignored</p></body>', "10.1186/1471-2458-14-123"),
 ("html", "<meta name='citation_doi' content='10.1080/09540121.2014.123456'>", "10.1080/09540121.2014.123456"),
 ("html", '<meta content="10.1002/hbm.22456" name="citation_doi">', "10.1002/hbm.22456"),
]
neg = [
 ("text", "Version 10.2 of the software was released."),
 ("text", "The ratio was 10.1234 overall."),
 ("text", "Call 10.1234 5678 for tickets."),
 ("text", "Temperatures hit 10.5/11 on the scale."),
 ("text", "Section 10.12/3 of the code."),
 ("text", "Prices rose to 10.99/kg this week."),
 ("text", "ISBN 978-0-12-345678-9"),
 ("text", "arXiv:1405.1234"),
 ("text", "PMID: 24812345"),
 ("text", "Product code 10.1234abc is discontinued."),
 ("text", "file10.1234/abc.txt"),
 ("text", "v10.1234/abc"),
 ("text", "x.10.1234/abc"),
 ("text", "model-10.1234/abc"),
 ("text", "10.123/abc has a short registrant."),
 ("text", "11.1234/abc is not a DOI."),
 ("text", "10.1234/"),
 ("text", "10.1234 / abc"),
 ("text", "10/1234/abc"),
 ("text", "10.abcd/efg"),
 ("text", "The score was 10-1234/abc."),
 ("text", "IP 10.12.34.56/24 was blocked."),
 ("text", "Dated 10.10.2014/2015 season."),
 ("text", "doi: pending"),
 ("text", "DOI not yet assigned."),
 ("text", "https://doi.org/"),
 ("text", "doi.org is the resolver."),
 ("text", "Call 0800 10.1234."),
 ("text", "Measured 10.1234mm/s"),
 ("text", "The journal's ISSN is 1234-5678."),
 ("text", "10. 1234/abc"),
 ("text", "ref10.1038/nature"),
 ("text", "Figure 10.1 shows the trend."),
 ("text", "about 10.00001 percent/year"),
 ("text", ""),
 ("html", "<html><head><title>No DOI here</title></head></html>"),
 ("html", '<meta name="citation_title" content="10.1234/looks-like-a-doi">'),
 ("html", '<meta name="citation_doi" content="">'),
 ("html", '<meta name="citation_doi" content="pending">'),
 ("html", '<meta name="dc.identifier" content="ISBN 978-0-12-345678-9">'),
 ("html", '<meta name="prism.doi" content="10/abc">'),
 ("html", '<a href="https://example.org/10.1234/abc">not a resolver</a>'),
 ("html", '<a href="https://doi.org/">resolver root</a>'),
 ("html", '<a href="https://doi.org/about">about</a>'),
 ("html", '<meta name="description" content="doi:10.1234/abc">'),
 ("html", '<link rel="canonical" href="https://journal.example/article/123">'),
 ("html", '<meta name="citation_pmid" content="24812345">'),
 ("html", '<meta name="og:url" content="https://doi.org/10.1234/abc">'),
 ("html", ""),
 ("html", '<meta name="citation_doi" content="11.1234/abc">'),
]
assert len(pos) == 50 and len(neg) == 50, (len(pos), len(neg))
json.dump({"positive": [{"kind": k, "input": i, "expected": e} for k, i, e in pos],
           "negative": [{"kind": k, "input": i} for k, i in neg]},
          open(__import__("pathlib").Path(__file__).resolve().parent.parent / "tests" / "data" / "doi_cases.json", "w"), indent=1)
