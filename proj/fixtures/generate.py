#!/usr/bin/env python3
"""Regenerates the static AfD log-page fixture corpus under fixtures/corpus/.

Each page mirrors the structure of a rendered daily log page: closed
discussions wrapped in the archived-discussion div carrying a result phrase,
open discussions as bare h3 sections, plus the usual page chrome. The
.expected.jsonl sidecars hold the hand-checked golden values (title, closure
state, canonical label, and for a few rich cases the exact cleaned text) that
the parser test suite asserts against.

The goldens are derived from the authored content below, never from the
parser output.
"""

import json
import os
import random

OUT_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "corpus")

MONTHS = [
    "January", "February", "March", "April", "May", "June",
    "July", "August", "September", "October", "November", "December",
]

USERS = [
    "Quarrystone", "MapleLeafEd", "Verbascum", "HollowayPark", "TidalFlat",
    "Greenshank", "OxbowLake", "Petrichor77", "LedgerLine", "Saxifrage",
    "Mudlark", "CairnTerrier", "BeaconHill", "Stonechat", "FenlandRover",
]


def esc(text):
    """HTML-escape plain text, rendering a few characters as named entities
    so entity decoding gets exercised."""
    out = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    out = out.replace("–", "&ndash;").replace("“", "&ldquo;").replace("”", "&rdquo;")
    return out


def user_link(user):
    return '<a href="/wiki/User:%s" title="User:%s">%s</a>' % (user, user, user)


def talk_link(user):
    return '(<a href="/wiki/User_talk:%s" title="User talk:%s">talk</a>)' % (user, user)


def sig(user, hh, mm, day, month, year):
    html = "%s %s %02d:%02d, %d %s %d (UTC)" % (
        user_link(user), talk_link(user), hh, mm, day, MONTHS[month - 1], year)
    text = "%s (talk) %02d:%02d, %d %s %d (UTC)" % (user, hh, mm, day, MONTHS[month - 1], year)
    return html, text


def anchor_of(title):
    return title.replace(" ", "_")


class Page:
    def __init__(self, year, month, day):
        self.year, self.month, self.day = year, month, day
        self.discussions = []

    def date_iso(self):
        return "%04d-%02d-%02d" % (self.year, self.month, self.day)

    def heading(self):
        return "Wikipedia:Articles for deletion/Log/%d %s %d" % (
            self.year, MONTHS[self.month - 1], self.day)


def render_comment(item, rng, page, pieces, depth=0):
    """item = (vote_or_None, text, [replies])"""
    vote, text, replies = item
    user = rng.choice(USERS)
    s_html, s_text = sig(user, rng.randrange(8, 23), rng.randrange(60), page.day,
                         page.month, page.year)
    if vote is not None:
        body = "<b>%s</b> %s %s" % (esc(vote), esc(text), s_html)
        pieces.append("%s %s %s" % (vote, text, s_text))
    else:
        body = "%s %s" % (esc(text), s_html)
        pieces.append("%s %s" % (text, s_text))
    inner = ""
    if replies:
        inner_items = "".join(render_comment(r, rng, page, pieces, depth + 1) for r in replies)
        inner = "\n<ul>%s</ul>" % inner_items
    return "\n<li>%s%s</li>" % (body, inner)


def render_discussion(d, page, rng):
    """Returns (section_html, golden_record). d keys:
    title, result (raw spelling or None), label (canonical or None),
    nom, comments (list of (vote, text, replies)), golden (bool),
    find_sources (bool)."""
    title = d["title"]
    anchor = anchor_of(title)
    pieces = [title]

    nom_user = rng.choice(USERS)
    nom_sig_html, nom_sig_text = sig(nom_user, rng.randrange(0, 12), rng.randrange(60),
                                     page.day, page.month, page.year)
    pieces.append("%s %s" % (d["nom"], nom_sig_text))

    find_sources = ""
    if d.get("find_sources", True):
        find_sources = (' <span class="plainlinks">(Find sources: '
                        '<a class="external" href="//example.invalid/q=%s">news</a> &middot; '
                        '<a class="external" href="//example.invalid/b=%s">books</a>)</span>'
                        % (anchor, anchor))

    body = []
    body.append('<p><a href="/wiki/%s" title="%s">%s</a>%s</p>'
                % (anchor, esc(title), esc(title), find_sources))
    body.append("<p>%s %s</p>" % (esc(d["nom"]), nom_sig_html))
    comment_items = "".join(render_comment(c, rng, page, pieces) for c in d["comments"])
    body.append("<ul>%s\n</ul>" % comment_items)
    body_html = "\n".join(body)

    heading = ('<h3><span class="mw-headline" id="%s">%s</span>'
               '<span class="mw-editsection"><span class="mw-editsection-bracket">[</span>'
               '<a href="/w/index.php?title=%s&amp;action=edit">edit</a>'
               '<span class="mw-editsection-bracket">]</span></span></h3>'
               % (anchor, esc(title), anchor))

    if d["result"] is None:
        section = "%s\n%s\n" % (heading, body_html)
    else:
        closer = rng.choice(USERS)
        c_html, _ = sig(closer, rng.randrange(0, 23), rng.randrange(60),
                        min(page.day + 7, 28), page.month, page.year)
        top = ('<p>The following discussion is an archived debate of the proposed deletion '
               'of the article below. <b>Please do not modify it.</b> Subsequent comments '
               'should be made on the appropriate discussion page (such as the article\'s '
               '<a href="/wiki/Help:Talk_pages" title="Help:Talk pages">talk page</a> or in a '
               '<a href="/wiki/Wikipedia:Deletion_review" title="Wikipedia:Deletion review">'
               'deletion review</a>). No further edits should be made to this page.</p>')
        result_line = '<p>The result was <b>%s</b>. <small>%s</small></p>' % (esc(d["result"]), c_html)
        bottom = ('<p>The above discussion is preserved as an archive of the debate. '
                  '<b>Please do not modify it.</b> Subsequent comments should be made on the '
                  'appropriate discussion page. No further edits should be made to this page.</p>')
        section = ('<div class="boilerplate metadata afd vfd xfd-closed archived" '
                   'style="background-color:#f3f9ff;">\n%s\n%s\n%s\n%s\n%s\n</div>\n'
                   % (top, result_line, heading, body_html, bottom))

    record = {
        "title": title,
        "anchor": anchor,
        "closed": d["result"] is not None,
        "label": d["label"],
    }
    if d.get("golden"):
        record["text"] = " ".join(pieces)
    return section, record


def render_page(page, rng):
    sections = []
    records = []
    for d in page.discussions:
        s, r = render_discussion(d, page, rng)
        sections.append(s)
        records.append(r)

    toc = ""
    if rng.random() < 0.4:
        items = "".join('<li class="toclevel-1"><a href="#%s">%s</a></li>'
                        % (anchor_of(d["title"]), esc(d["title"])) for d in page.discussions)
        toc = '<div id="toc" class="toc"><ul>%s</ul></div>\n' % items

    nav = ('<div class="noprint" role="navigation">&lt; <a href="/wiki/Wikipedia:Articles_for_'
           'deletion/Log/%d_%s_%d">previous day</a> | <a href="/w/index.php?action=purge">'
           'Purge server cache</a></div>' % (page.year, MONTHS[page.month - 1], max(page.day - 1, 1)))

    html = """<!DOCTYPE html>
<html class="client-nojs" lang="en" dir="ltr">
<head>
<meta charset="UTF-8">
<title>%s - Wikipedia</title>
</head>
<body class="mediawiki ltr sitedir-ltr">
<div id="content" class="mw-body" role="main">
<h1 id="firstHeading" class="firstHeading">%s</h1>
<div id="bodyContent" class="vector-body">
<div id="mw-content-text" class="mw-content-ltr">
<div class="mw-parser-output">
%s%s
%s
</div>
</div>
<div class="printfooter">Retrieved from "https://en.wikipedia.org/wiki/%s"</div>
</div>
</div>
</body>
</html>
""" % (page.heading(), page.heading(), nav + "\n", toc, "\n".join(sections),
       anchor_of(page.heading()))
    return html, records


# ---------------------------------------------------------------------------
# Authored corpus. Comment tuples are (bold vote or None, text, replies).
# ---------------------------------------------------------------------------

def c(vote, text, replies=()):
    return (vote, text, list(replies))


def build_corpus():
    pages = []

    # -- 2023-01-01: 3 closed + 1 open; one discussion with 5 comments and a
    #    hand-written golden text.
    p = Page(2023, 1, 1)
    p.discussions = [
        dict(title="Battle of Qarnstead", result="delete", label="delete", golden=True,
             nom="The article relies on a single contemporary source & fails verification.",
             comments=[
                 c("Delete", "per nom. The sourcing is nowhere near enough."),
                 c("Delete", "Just a junk article, not notable."),
                 c("Keep", "There is coverage in regional histories of the 1860s."),
                 c("Comment", "The lone source is a translation of the same chronicle."),
                 c("Delete", "Fails WP:GNG. See p. 4 of the source for the only mention."),
             ]),
        dict(title="Raisul Example Ador", result="Speedy Delete", label="speedy delete",
             nom="None establish his Wikipedia:Notability . The first reference is almost "
                 "identical in wording to his official web site.",
             comments=[
                 c("Speedy delete", "promotional autobiography, no independent sources."),
                 c("Delete", "agreed, the references are not reliable."),
             ]),
        dict(title="List of fictional harbours", result="keep", label="keep",
             nom="Indiscriminate list with no clear inclusion criterion.",
             comments=[
                 c("Keep", "the list has a sourced lead and a bounded scope."),
                 c("Keep", "inclusion criterion is fine; cleanup is not deletion."),
                 c("Delete", "cruft magnet, unmaintainable."),
             ]),
        dict(title="Glenhollow Viaduct", result=None, label=None,
             nom="Procedural nomination; notability tag sat for two years.",
             comments=[
                 c("Keep", "19th century viaducts are routinely covered in engineering surveys."),
                 c("Comment", "Waiting for the heritage listing database to come back online."),
             ]),
    ]
    pages.append(p)

    # -- 2023-01-02: nested replies with a golden text pinning document order.
    p = Page(2023, 1, 2)
    p.discussions = [
        dict(title="Harriet Quills (author)", result="redirect", label="redirect", golden=True,
             nom="Self-published author; best claim is a shared regional award.",
             comments=[
                 c("Redirect", "to the award page, plausible search term.", [
                     c(None, "The award page barely mentions her."),
                     c("Keep", "Two independent reviews exist – see the talk page.", [
                         c(None, "Those reviews are blog posts, not reliable sources."),
                     ]),
                 ]),
                 c("Delete", "nothing to merge, fails the author test."),
             ]),
        dict(title="Kelples FC 2019–20 reserve season", result="deleted", label="delete",
             nom="Reserve team season with zero secondary coverage.",
             comments=[
                 c("Delete", "fails WP:GNG and the season guideline."),
                 c("Delete", "routine match listings only."),
             ]),
    ]
    pages.append(p)

    # -- 2023-01-03: variant spellings and an unknown-label close.
    p = Page(2023, 1, 3)
    p.discussions = [
        dict(title="Ovenbird Crossing", result="No consensus", label="no consensus",
             nom="Unsure this rail halt passes the geographic feature guideline.",
             comments=[
                 c("Keep", "verifiable against the national gazetteer."),
                 c("Delete", "gazetteer entries are not significant coverage."),
                 c("Comment", "split opinions in two relists."),
             ]),
        dict(title="Trendle & Sons", result="transwiki", label=None,
             nom="Family firm, purely local coverage since 1988.",
             comments=[
                 c("Delete", "local interest only."),
                 c(None, "Could move the content to a sister project instead."),
             ]),
        dict(title="Example Band (musicians)", result="kept", label="keep",
             nom="Band with one EP; the charting claim is unsourced.",
             comments=[
                 c("Keep", "charted nationally in 2019, source added."),
                 c("Keep", "coverage in two music magazines now cited."),
             ]),
    ]
    pages.append(p)

    # -- 2023-01-04: masked-setup material: bold non-vote spans and two-word votes.
    p = Page(2023, 1, 4)
    p.discussions = [
        dict(title="Pinnacle Grove Shopping Village", result="merge", label="merge",
             nom="Mall with routine opening coverage only.",
             comments=[
                 c("Merge", "into the suburb article, nothing independent."),
                 c("Strong keep", "anchor tenant coverage is national, not routine."),
                 c("Note", "the suburb article already has a retail section."),
                 c("Weak delete", "coverage is thin and promotional."),
             ]),
        dict(title="Sundry Lane Halt", result="redirected", label="redirect",
             nom="Closed 1953; single line in a stations table.",
             comments=[
                 c("Redirect", "to the line article per precedent."),
                 c(None, "Agreed, the table row is all we have."),
             ]),
        dict(title="Mavis Thorpepole", result="Withdraw", label="withdrawn",
             nom="BLP of a council candidate, no significant coverage.",
             comments=[
                 c("Keep", "she won the by-election yesterday; NPOL now applies."),
                 c("Comment", "Nominator here – withdrawing in light of the result."),
             ]),
    ]
    pages.append(p)

    # -- 2023-01-05: speedy keep + entity-heavy comments.
    p = Page(2023, 1, 5)
    p.discussions = [
        dict(title="Speedwell Society of Greater Anvale", result="Speedy keep", label="speedy keep",
             nom="Nominated by a banned sockpuppet; listing for procedure.",
             comments=[
                 c("Speedy keep", "bad-faith nomination, no deletion rationale offered."),
                 c("Keep", "“no rationale” says it all."),
             ]),
        dict(title="Anvale – Riverton Tramway", result="keep", label="keep",
             nom="Heritage tramway; sources are enthusiast newsletters.",
             comments=[
                 c("Keep", "county histories cover it: Rails & Rivers (1977), ch. 3."),
                 c("Delete", "newsletters aren't independent of the operating trust."),
                 c("Keep", "the 1977 survey alone is significant coverage."),
             ]),
    ]
    pages.append(p)

    # -- 2023-01-06 .. 2023-01-24: broader coverage of labels and shapes.
    spec_rest = [
        ("2023-01-06", [
            ("Corveld important flora list", "delete", "delete",
             "Listcruft; duplicated by the category system.",
             [("Delete", "category already exists."), ("Delete", "per nom."),
              ("Keep", "lists and categories can coexist.")]),
            ("Halloran's Comet hoax", "speedily deleted", "speedy delete",
             "Patent hoax; the cited observatory does not exist.",
             [("Speedy delete", "blatant hoax, G3 territory."),
              ("Delete", "zero hits in the astronomy literature.")]),
        ]),
        ("2023-01-07", [
            ("Willowmere Academy of Dance", "delete", "delete",
             "Private studio, purely promotional references.",
             [("Delete", "advertising, fails WP:ORG."), ("Delete", "agree, spam.")]),
            ("Quenby Fen drainage windmill", "keep", "keep",
             "Stub on a demolished windmill.",
             [("Keep", "listed building, well documented."), ("Keep", "plenty in the county record.")]),
            ("Greater Anvale bus route 77", "merge", "merge",
             "Bus route with timetable references only.",
             [("Merge", "to the operator's route list."), ("Merge", "standard outcome for routes."),
              ("Delete", "nothing worth merging.")]),
        ]),
        ("2023-01-08", [
            ("Tormund Veil (editor)", "no consensus", "no consensus",
             "Magazine editor; coverage is interviews.",
             [("Keep", "interviews in three national outlets."),
              ("Delete", "interviews are primary sources."),
              ("Comment", "relisted twice already.")]),
            ("2022 Anvale charity regatta", "withdrawn", "withdrawn",
             "Run-of-the-mill local event.",
             [("Keep", "turns out it set a national fundraising record."),
              ("Comment", "Withdrawing, the record coverage settles it.")]),
        ]),
        ("2023-01-09", [
            ("Portswick Lighthouse Museum", "redirect", "redirect",
             "Museum closed in 2011; website dead.",
             [("Redirect", "to Portswick Lighthouse."), ("Redirect", "sensible target.")]),
            ("Binary pulse marketing", "delete", "delete",
             "Neologism coined by a consultancy.",
             [("Delete", "WP:NEO, no independent usage."), ("Delete", "promotional coinage.")]),
            ("Corveld Crag", None, None,
             "Does a crag with one climbing guide entry pass?",
             [("Keep", "named natural features usually do."), ("Delete", "guidebook listing only.")]),
        ]),
        ("2023-01-10", [
            ("Anvale Fried Chicken Challenge", "delete", "delete",
             "Local eating contest, one newspaper piece.",
             [("Delete", "one-off local coverage."), ("Delete", "WP:NOTNEWS.")]),
            ("Mirelle Fontaine discography", "merge", "merge",
             "Two-single discography fork.",
             [("Merge", "back into the artist article."), ("Merge", "premature split.")]),
        ]),
        ("2023-01-11", [
            ("SS Coraline Maru (1921)", "keep", "keep",
             "Cargo ship; only registry entries cited.",
             [("Keep", "wreck is a protected site, coverage follows."),
              ("Keep", "shipwreck gazetteer has two pages on her."),
              ("Delete", "registries are routine records.")]),
            ("Fenwick triangle theory", "delete", "delete",
             "Fringe geometry pushed by one author.",
             [("Delete", "WP:FRINGE, no independent discussion."),
              ("Delete", "self-citations only."),
              ("Comment", "author is the article creator.")]),
        ]),
        ("2023-01-12", [
            ("Greyhaven Model United Nations", "speedy keep", "speedy keep",
             "Nominator blocked as a vandalism-only account.",
             [("Speedy keep", "procedural, nominator blocked."),
              ("Comment", "club still needs better sources, tag it.")]),
            ("Null Island Music Festival", "speedy delete", "speedy delete",
             "Festival that never took place; announcement recycled yearly.",
             [("Speedy delete", "hoax bordering on fraud."), ("Delete", "vaporware event.")]),
        ]),
        ("2023-01-13", [
            ("Thistlewane (band)", "no-consensus", "no consensus",
             "Band with one notable member.",
             [("Keep", "inherits nothing, but the tour coverage is real."),
              ("Delete", "coverage is about the member, not the band."),
              ("Merge", "to the member's page as a compromise.")]),
            ("Anvale East signal box", "redirect", "redirect",
             "Demolished signal box.",
             [("Redirect", "to the station article."), ("Redirect", "standard practice.")]),
        ]),
        ("2023-01-14", [
            ("Camber Wells mineral spring", "keep", "keep",
             "Spa spring; Victorian sources only.",
             [("Keep", "Victorian sources are still sources."),
              ("Keep", "two county histories and a geology survey.")]),
            ("DJ Quantifier", "delete", "delete",
             "Producer with self-released tracks.",
             [("Delete", "fails WP:NMUSIC comprehensively."), ("Delete", "no charting, no coverage.")]),
            ("Orrell Bypass protest camp", None, None,
             "News coverage exists but is it lasting?",
             [("Keep", "national coverage over six months."), ("Delete", "WP:NOTNEWS applies.")]),
        ]),
        ("2023-01-15", [
            ("Hetty Marsh (cricketer)", "nomination withdrawn", "withdrawn",
             "1920s cricketer, scorecards only.",
             [("Keep", "obituary found in the county almanack."),
              ("Comment", "Withdrawing per the obituary find.")]),
            ("Corveld expressway service areas", "merge", "merge",
             "Service-area list fork.",
             [("Merge", "into the expressway article."), ("Merge", "fork is unnecessary.")]),
        ]),
        ("2023-01-16", [
            ("Anvale Codex (blog)", "delete", "delete",
             "Group blog; alexa-rank style claims.",
             [("Delete", "no reliable coverage of the blog itself."),
              ("Delete", "fails WP:WEB."), ("Keep", "cited by two newspapers as a source.")]),
            ("Pilchard Sound ferry disaster", "keep", "keep",
             "1907 sinking, sourced to one retrospective.",
             [("Keep", "contemporary coverage is extensive once you look."),
              ("Keep", "inquiry report runs to 200 pages.")]),
        ]),
        ("2023-01-17", [
            ("Example Band (musicians)", "delete", "delete",
             "Renominating: the 2019 charting claim was never verified.",
             [("Delete", "the chart archive has no entry for them."),
              ("Delete", "previous keep rested on that claim."),
              ("Keep", "magazine coverage stands regardless.")]),
            ("Brindle Hollow oral history project", "no consensus", "no consensus",
             "University project page.",
             [("Keep", "archived by the national library."), ("Delete", "primary materials only.")]),
        ]),
        ("2023-01-18", [
            ("Velvetleaf Records", "redirect", "redirect",
             "Label with two signings.",
             [("Redirect", "to the parent label."), ("Redirect", "reasonable search term."),
              ("Delete", "not even worth a redirect.")]),
            ("Anvale pie-and-peas supper", "speedy keep", "speedy keep",
             "Nominated five minutes after a failed AfD closed.",
             [("Speedy keep", "disruptive renomination."), ("Comment", "give it six months at least.")]),
        ]),
        ("2023-01-19", [
            ("Morwenna Tate", "delete", "delete",
             "Actress with extra roles.",
             [("Delete", "no significant roles, no coverage."), ("Delete", "IMDb is not a source.")]),
            ("Corveld stone rows", "keep", "keep",
             "Scheduled monument stub.",
             [("Keep", "scheduled monuments are presumed notable."),
              ("Keep", "added the heritage register reference.")]),
        ]),
        ("2023-01-20", [
            ("Fernbeck Institute of Memetics", "speedily deleted", "speedy delete",
             "Webshop masquerading as a research institute.",
             [("Speedy delete", "unambiguous advertising, G11."),
              ("Delete", "spam either way.")]),
            ("List of Anvale alleyways", "delete", "delete",
             "Unsourced list of alleys.",
             [("Delete", "indiscriminate."), ("Delete", "WP:NOTDIR."),
              ("Merge", "a sentence on the medieval core could go in Anvale.")]),
        ]),
        ("2023-01-21", [
            ("Tansy Brook culvert collapse", "merge", "merge",
             "2014 infrastructure failure, local coverage.",
             [("Merge", "into Tansy Brook."), ("Merge", "event fails WP:EVENT alone.")]),
            ("Queen of the Fens (locomotive)", "withdrawn", "withdrawn",
             "Preserved locomotive, enthusiast sources.",
             [("Keep", "featured in two BBC documentaries, adding refs."),
              ("Comment", "Withdrawn – the documentaries settle notability.")]),
        ]),
        ("2023-01-22", [
            ("Gorsefield free festival", "no consensus", "no consensus",
             "1970s festival, fanzine sources.",
             [("Keep", "covered in histories of the free festival movement."),
              ("Delete", "fanzines fail WP:RS."), ("Comment", "second relist, still split.")]),
            ("Anvale University Shogi Club", "delete", "delete",
             "Student club.",
             [("Delete", "student clubs are almost never notable."), ("Delete", "no coverage.")]),
        ]),
        ("2023-01-23", [
            ("Harkness visual grammar", "redirect", "redirect",
             "Design-school term, one textbook.",
             [("Redirect", "to the textbook author."), ("Redirect", "cheap and harmless.")]),
            ("Bellwether Point seal colony", "keep", "keep",
             "Wildlife site stub.",
             [("Keep", "long-running monitoring programme, well sourced."),
              ("Keep", "marine survey literature covers it annually.")]),
            ("Corveld Pals battalion memorial", None, None,
             "War memorial; likely notable but unsourced since 2016.",
             [("Keep", "memorials of this type are catalogued nationally."),
              ("Comment", "the national inventory is offline this week.")]),
        ]),
        ("2023-01-24", [
            ("The Anvale Gazette and Daily Bugle", "merge", "merge",
             "Freesheet with a shared history article.",
             [("Merge", "into the combined newspapers article."), ("Merge", "duplicate history.")]),
            ("Brackwater electric tramway accident", "delete", "delete",
             "1931 accident, single sentence in a trade journal.",
             [("Delete", "no lasting coverage."), ("Delete", "even the trade journal is a footnote."),
              ("Comment", "the tramway article already mentions it.")]),
        ]),
    ]

    for date_iso, discs in spec_rest:
        y, m, d = (int(x) for x in date_iso.split("-"))
        page = Page(y, m, d)
        for (title, result, label, nom, comments) in discs:
            page.discussions.append(dict(
                title=title, result=result, label=label, nom=nom,
                comments=[c(v, t) for (v, t) in comments]))
        pages.append(page)

    return pages


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    pages = build_corpus()
    for page in pages:
        rng = random.Random("afd-fixtures:" + page.date_iso())
        html, records = render_page(page, rng)
        base = os.path.join(OUT_DIR, page.date_iso())
        with open(base + ".html", "w", encoding="utf-8") as f:
            f.write(html)
        with open(base + ".expected.jsonl", "w", encoding="utf-8") as f:
            for r in records:
                f.write(json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n")
    print("wrote %d fixture pages to %s" % (len(pages), OUT_DIR))


if __name__ == "__main__":
    main()
