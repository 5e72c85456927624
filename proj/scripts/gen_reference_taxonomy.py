#!/usr/bin/env python3
"""Regenerates data/taxonomy/reference.json.

Topic list and names follow the published 66-topic table. Surfaces, phrases
and decision trees are repository-authored stand-ins.
"""
import json
import pathlib

THEMES = {
    "EC": "economic conditions",
    "POL": "policy",
    "CORE": "core mandate",
    "RE": "real estate",
    "CREDIT": "credit and financial markets",
    "RISK": "risk",
    "EXT": "external sector",
    "FUN": "fundamentals",
    "SAV": "saving",
    "OTH": "other",
}

# mnemonic, name, subject, up, down, polarity, phrases
# polarity +1: "up" reads hawkish; -1: "up" reads dovish.
TOPICS = [
    ("EC-FORECAST", "Forecasting (including Consensus Economics, Scenarios, etc.)",
     "the economic outlook in the forecasts", "outlook revised up", "outlook revised down", 1,
     ["forecast", "central scenario", "consensus forecast", "forecast revision", "staff projections"]),
    ("EC-INDICATOR", "Economic Indicators (including Noise, Seasonal Adjustment)",
     "the latest economic indicators", "indicators stronger than expected", "indicators weaker than expected", 1,
     ["economic indicators", "monthly indicator", "seasonal adjustment", "partial indicators", "data noise"]),
    ("POL-MONETARY", "Monetary Policy",
     "the monetary policy setting", "policy needs to be tighter", "policy needs to be looser", 1,
     ["monetary policy", "policy stance", "cash rate target", "forward guidance", "policy settings"]),
    ("POL-STIMULUS", "Economic Stimulus (incl. Government Grants, Incentives, Rebates, Subsidies)",
     "economic stimulus", "stimulus expanding", "stimulus being withdrawn", 1,
     ["stimulus", "government grants", "subsidies", "rebates", "support measures"]),
    ("POL-FISCAL", "Fiscal Policy (incl. austerity)",
     "fiscal policy", "fiscal policy expansionary", "fiscal policy contractionary", 1,
     ["fiscal policy", "government spending", "austerity", "fiscal support", "public demand"]),
    ("POL-GOVBUDGET", "Government Budget (Deficits and Surpluses)",
     "the government budget position", "deficit widening", "deficit narrowing", 1,
     ["budget deficit", "budget surplus", "government budget", "fiscal balance", "budget position"]),
    ("POL-TAX", "Taxation",
     "taxation", "taxes being cut", "taxes being raised", 1,
     ["taxation", "tax cuts", "income tax", "tax offsets", "stage three tax"]),
    ("POL-LEGISLATIONREGULATION", "Legislation and Regulation",
     "legislation and regulation", "regulation supporting activity", "regulation restraining activity", 1,
     ["legislation", "regulation", "regulatory changes", "policy reform", "administered prices"]),
    ("CORE-INFLATION", "Inflation and Inflationary Pressures", None, None, None, 1,
     ["inflation", "inflationary pressures", "consumer price index", "underlying inflation", "trimmed mean inflation", "price pressures"]),
    ("CORE-INFLATIONEXPECTATIONS", "Inflation Expectations",
     "inflation expectations", "expectations rising", "expectations falling", 1,
     ["inflation expectations", "expected inflation", "longer-term expectations", "expectations well anchored", "survey measures of expectations"]),
    ("CORE-TARGET", "Inflation Target (2-3 per cent)",
     "inflation relative to the 2-3 per cent target", "inflation above the target range", "inflation below the target range", 1,
     ["inflation target", "2-3 per cent target", "target range", "midpoint of the target", "return to target"]),
    ("CORE-PRODUCTIVITY", "Productivity",
     "productivity growth", "productivity weakening", "productivity strengthening", 1,
     ["productivity", "productivity growth", "labour productivity", "output per hour", "unit labour costs"]),
    ("CORE-CAPACITY", "Productive Capacity (e.g. aggregate demand/supply, capacity)",
     "the balance of aggregate demand and supply", "demand exceeding supply", "spare capacity emerging", 1,
     ["spare capacity", "capacity utilisation", "aggregate demand", "aggregate supply", "output gap"]),
    ("CORE-LABOUREXTENSIVE", "Labour Market, Extensive Margin (e.g. Employment, Unemployment, Participation, Hires and Quits, Layoffs)",
     "employment and unemployment", "employment strengthening", "unemployment rising", 1,
     ["unemployment rate", "employment growth", "participation rate", "job vacancies", "layoffs"]),
    ("CORE-LABOURINTENSIVE", "Labour Market, Intensive Margin (e.g. Hours Worked, Underutilisation, Part vs Full Time)",
     "hours worked and underutilisation", "hours worked rising", "underutilisation rising", 1,
     ["hours worked", "underemployment", "underutilisation", "part-time employment", "full-time employment"]),
    ("CORE-LABOURCAPACITY", "Labour Market Capacity (e.g. labour market slack or tightness, the NAIRU)",
     "labour market tightness", "labour market tight", "labour market slack", 1,
     ["labour market tightness", "spare capacity in the labour market", "NAIRU", "full employment", "labour shortages"]),
    ("CORE-SKILLS", "Worker Skills and Human Capital",
     "worker skills", "skill shortages intensifying", "skill shortages easing", 1,
     ["skills shortages", "human capital", "worker skills", "training", "skilled labour"]),
    ("CORE-WAGES", "Wages, Salaries, and Employee Compensation (including Enterprise Bargaining)",
     "wages growth", "wages growth picking up", "wages growth subdued", 1,
     ["wages growth", "wage price index", "enterprise bargaining", "minimum wage", "labour costs"]),
    ("CORE-ACTIVITY", "GDP and Economic Activity (e.g. Domestic Demand, National Accounts)",
     "economic activity", "growth above trend", "growth below trend", 1,
     ["GDP growth", "economic activity", "domestic demand", "national accounts", "output growth"]),
    ("CORE-SUPPLYSHOCKS", "Supply Shocks",
     "supply shocks", "supply shocks pushing prices up", "supply shocks unwinding", 1,
     ["supply shocks", "supply chain disruptions", "supply constraints", "shipping costs", "input shortages"]),
    ("CORE-DEMANDSHOCKS", "Demand Shocks",
     "demand shocks", "positive demand shock", "negative demand shock", 1,
     ["demand shock", "pent-up demand", "demand surge", "demand slump", "spending shock"]),
    ("CORE-DISRUPTION", "Economic Disruption (e.g. trade tensions, COVID-19 pandemic)",
     "economic disruption", "disruption easing", "disruption intensifying", 1,
     ["pandemic", "COVID-19", "trade tensions", "lockdowns", "economic disruption"]),
    ("CORE-BUSACTIVITY", "Business Activity (e.g. Profits and Solvency, Inventories)",
     "business conditions", "business conditions strengthening", "business conditions weakening", 1,
     ["business conditions", "profits", "inventories", "insolvencies", "business activity"]),
    ("CORE-CYCLES", "Economic Cycles (Recessions and Expansions)",
     "the economic cycle", "expansion continuing", "recession risk rising", 1,
     ["recession", "expansion", "economic cycle", "downturn", "recovery"]),
    ("CORE-FINDISRUPTION", "Financial Crises",
     "financial crisis conditions", "financial stress easing", "financial stress intensifying", 1,
     ["financial crisis", "global financial crisis", "bank failures", "market dysfunction", "financial stress"]),
    ("CORE-HOUSEHOLDINCOMES", "Household Incomes and Budgets",
     "household incomes", "household incomes rising", "household budgets under pressure", 1,
     ["household income", "disposable income", "household budgets", "real incomes", "household cash flow"]),
    ("CORE-WEALTH", "Wealth",
     "household wealth", "wealth rising", "wealth falling", 1,
     ["household wealth", "wealth effects", "net worth", "asset values", "wealth growth"]),
    ("CORE-COMPETITION", "Competition",
     "competition", "competition weakening", "competition intensifying", 1,
     ["competition", "market power", "pricing power", "competitive pressures", "mark-ups"]),
    ("CORE-INVESTMENT", "Investment and Capital Expenditure",
     "business investment", "investment strengthening", "investment weakening", 1,
     ["business investment", "capital expenditure", "investment intentions", "non-mining investment", "capex"]),
    ("CORE-CONSUMPTION", "Consumption",
     "household consumption", "consumption strengthening", "consumption weakening", 1,
     ["household consumption", "consumer spending", "retail sales", "discretionary spending", "consumption growth"]),
    ("CORE-TRADABLENONTRADEABLE", "Tradable and Non-Tradable Sectors",
     "tradable and non-tradable prices", "non-tradable inflation rising", "non-tradable inflation easing", 1,
     ["tradable inflation", "non-tradable inflation", "tradables prices", "non-tradables prices", "domestic inflation"]),
    ("CORE-MANUF", "Manufacturing Sector",
     "manufacturing activity", "manufacturing expanding", "manufacturing contracting", 1,
     ["manufacturing", "factory output", "manufacturing PMI", "industrial production", "manufacturers"]),
    ("CORE-SERVICES", "Services Sector",
     "services activity and prices", "services inflation rising", "services inflation easing", 1,
     ["services inflation", "services sector", "services activity", "market services", "services prices"]),
    ("CORE-AFFORDABILITY", "Affordability and Cost of Living",
     "cost of living pressures", "cost of living pressures building", "cost of living pressures easing", 1,
     ["cost of living", "affordability", "cost-of-living pressures", "living costs", "price of essentials"]),
    ("CORE-CAPITALSTOCK", "Capital Stock (incl. infrastructure)",
     "the capital stock", "capital stock constraining supply", "capital stock expanding supply", 1,
     ["capital stock", "infrastructure", "infrastructure investment", "public infrastructure", "capital deepening"]),
    ("RE-COMMERCIAL", "Commercial Real Estate",
     "commercial property", "commercial property strengthening", "commercial property weakening", 1,
     ["commercial property", "office vacancies", "commercial real estate", "office space", "property valuations"]),
    ("RE-RESIDENTIAL", "Residential Real Estate (e.g. Housing, Rents, Dwelling Construction and Investment)",
     "housing prices and rents", "housing prices and rents rising", "housing prices and rents falling", 1,
     ["housing prices", "rents", "housing market", "dwelling investment", "rental vacancy"]),
    ("RE-CONSTRUCTION", "Building Approvals and Construction",
     "construction activity", "construction activity rising", "construction activity falling", 1,
     ["building approvals", "construction activity", "dwelling approvals", "construction pipeline", "construction costs"]),
    ("CREDIT-INTERESTRATES", "The official cash rate or other interest rates",
     "interest rates", "interest rates need to rise", "interest rates can fall", 1,
     ["cash rate", "interest rates", "lending rates", "rate increase", "rate cut"]),
    ("CREDIT-VOLATILITY", "Financial volatility",
     "financial market volatility", "volatility subsiding", "volatility rising", 1,
     ["volatility", "market volatility", "financial volatility", "market turbulence", "risk aversion"]),
    ("CREDIT-BANKING", "Banking Sector (including Resolution and Macroprudential Policies)",
     "the banking sector", "banks lending freely", "banks tightening lending", 1,
     ["banking system", "macroprudential policy", "bank capital", "lending standards", "resolution"]),
    ("CREDIT-CREDITGROWTH", "Credit Growth and Allocation",
     "credit growth", "credit growth strong", "credit growth weak", 1,
     ["credit growth", "housing credit", "business credit", "lending growth", "credit demand"]),
    ("CREDIT-PRICING", "Credit and Asset Pricing (e.g. Asset Prices, Yield Curves)",
     "asset prices and yields", "asset prices buoyant", "asset prices falling", 1,
     ["asset prices", "yield curve", "credit spreads", "risk premia", "term premium"]),
    ("CREDIT-EQUITIES", "Equities Markets",
     "equity markets", "equity prices rising", "equity prices falling", 1,
     ["equity prices", "share market", "equities", "stock prices", "equity valuations"]),
    ("CREDIT-BONDS", "Bond Markets and Securitisation (e.g. RMBS, ABS)",
     "bond market conditions", "bond yields rising", "bond yields falling", 1,
     ["bond yields", "bond market", "securitisation", "RMBS", "government bond yields"]),
    ("CREDIT-HOUSEHOLDDEBT", "Household Debt (e.g. Mortgages, Credit Cards)",
     "household debt", "household debt growing", "household debt stress rising", 1,
     ["household debt", "mortgage payments", "mortgage arrears", "credit cards", "debt servicing"]),
    ("CREDIT-CORPDEBT", "Corporate Debt (e.g. Corporate Bonds, Business Loans)",
     "corporate debt", "corporate borrowing expanding", "corporate debt stress rising", 1,
     ["corporate debt", "business loans", "corporate bonds", "corporate borrowing", "business leverage"]),
    ("CREDIT-GOVTDEBT", "Government Debt (e.g. Australian Government Securities, Treasury Bills)",
     "government debt markets", "government bond yields rising", "government bond purchases continuing", 1,
     ["government debt", "government securities", "treasury bills", "bond purchases", "public debt"]),
    ("CREDIT-INFRASTRUCTURE", "Financial Market Infrastructure (e.g. central counterparties, stock exchanges)",
     "financial market infrastructure", "infrastructure functioning well", "infrastructure under strain", 1,
     ["central counterparties", "payments system", "stock exchange", "settlement", "clearing"]),
    ("RISK-CONFIDENCE", "Consumer and Business Confidence",
     "consumer and business confidence", "confidence improving", "confidence deteriorating", 1,
     ["consumer confidence", "business confidence", "sentiment", "consumer sentiment", "business surveys"]),
    ("RISK-FINRISK", "Financial risks (e.g. credit risk, duration risk, risk-on or risk-off sentiment)",
     "financial risks", "risk appetite high", "financial risks rising", 1,
     ["financial risks", "credit risk", "duration risk", "risk-off", "financial stability risks"]),
    ("RISK-GEOPOLITICAL", "Geopolitical risk (e.g. war, terrorist attacks)",
     "geopolitical risk", "geopolitical tensions adding to price pressures", "geopolitical tensions weighing on growth", 1,
     ["geopolitical", "war in ukraine", "conflict", "geopolitical tensions", "terrorist attacks"]),
    ("RISK-INSURANCE", "Insurance",
     "insurance costs", "insurance premiums rising", "insurance premiums easing", 1,
     ["insurance", "insurance premiums", "insurers", "insurance costs", "reinsurance"]),
    ("EXT-CURRENCIES", "Currencies",
     "the exchange rate", "currency depreciating", "currency appreciating", 1,
     ["exchange rate", "australian dollar", "currency", "depreciation", "trade-weighted index"]),
    ("EXT-INTLECON", "International Economics and Capital Flows",
     "the global economy", "global growth strengthening", "global growth weakening", 1,
     ["global economy", "global growth", "capital flows", "trading partners", "world economy"]),
    ("EXT-TRADE", "Trade (e.g. Imports and Exports)",
     "trade", "exports strengthening", "exports weakening", 1,
     ["exports", "imports", "terms of trade", "trade balance", "trade flows"]),
    ("EXT-MINING", "Mining and Resources Sector Activity",
     "mining activity", "mining activity expanding", "mining activity contracting", 1,
     ["mining investment", "resources sector", "mining exports", "mining activity", "resource projects"]),
    ("EXT-COMMODITIES", "Oil and Bulk Commodity Markets (e.g. Oil, Gas, Iron Ore)",
     "commodity prices", "commodity prices rising", "commodity prices falling", 1,
     ["oil prices", "iron ore prices", "commodity prices", "gas prices", "fuel prices"]),
    ("EXT-AGRICULTURAL", "Agricultural Commodities",
     "agricultural prices", "food prices rising", "food prices falling", 1,
     ["food prices", "agricultural commodities", "farm output", "drought", "rural exports"]),
    ("EXT-INTLMONETARYPOLICY", "International Monetary Policy Comparisons",
     "monetary policy abroad", "central banks abroad tightening", "central banks abroad easing", 1,
     ["central banks abroad", "federal reserve", "global policy rates", "other central banks", "international monetary policy"]),
    ("FUN-DEMOGRAPHICS", "Demographics and Population (including International Students and Migration)",
     "population growth", "population growth adding to demand", "population growth slowing", 1,
     ["population growth", "migration", "international students", "ageing population", "net overseas migration"]),
    ("FUN-CLIMATE", "Weather Events and Environmental Policies",
     "weather events and climate policy", "weather events pushing prices up", "weather events weighing on output", 1,
     ["weather events", "floods", "bushfires", "climate change", "energy transition"]),
    ("SAV-SAVING", "Saving",
     "household saving", "saving rate falling", "saving rate rising", 1,
     ["saving rate", "household saving", "savings buffers", "precautionary saving", "excess savings"]),
    ("SAV-SUPER", "Superannuation Schemes",
     "superannuation", "superannuation withdrawals boosting spending", "superannuation contributions restraining spending", 1,
     ["superannuation", "super guarantee", "super funds", "retirement savings", "early access to superannuation"]),
    ("OTH-CBGOVERNANCE", "Central Bank Governance",
     "central bank governance", "board emphasising price stability", "board emphasising full employment", 1,
     ["reserve bank board", "governance", "central bank independence", "monetary policy board", "review of the reserve bank"]),
    ("OTH-ORGANISATIONS", "International Organisations (e.g. IMF, Chinese Communist Party, ASEAN)",
     "assessments by international organisations", "organisations warning of inflation", "organisations warning of weak growth", 1,
     ["IMF", "OECD", "international organisations", "ASEAN", "world bank"]),
]


def terminal(stance, rationale):
    return {"terminal": {"stance": stance, "rationale": rationale}}


def question(text, answers):
    return {"question": text, "answers": [{"label": l, "next": n} for l, n in answers]}


def inflation_tree():
    return question(
        "Is inflation described as a risk, are policymakers willing to tolerate inflationary pressures, "
        "or is there no mention at all?",
        [
            ("inflation risk discussed", question(
                "Is inflation expected to stay above target for an extended period?",
                [
                    ("yes, persistently above target", terminal("hawkish", "Persistent inflation risk calls for tighter policy.")),
                    ("no, expected to return to target", terminal("leaning hawkish", "Inflation risk is noted but expected to fade.")),
                ])),
            ("willing to tolerate inflation pressures", question(
                "Is the tolerance justified by weakness in demand or the labour market?",
                [
                    ("yes, weakness cited", terminal("dovish", "Tolerating inflation to support a weak economy.")),
                    ("no, other reasons", terminal("leaning dovish", "Some tolerance of inflation without clear weakness.")),
                ])),
            ("no mention of inflation", terminal("neutral", "Inflation is not discussed.")),
        ])


def directional_tree(subject, up, down, polarity):
    hawk = ("hawkish", "leaning hawkish")
    dove = ("dovish", "leaning dovish")
    up_side, down_side = (hawk, dove) if polarity > 0 else (dove, hawk)
    return question(
        f"How does the paragraph describe {subject}?",
        [
            (up, question(
                "Is this linked to inflationary pressure or the need for policy to respond?",
                [
                    ("yes, linked", terminal(up_side[0], f"{up[0].upper() + up[1:]}, with policy implications.")),
                    ("no, not linked", terminal(up_side[1], f"{up[0].upper() + up[1:]}, without a stated policy link.")),
                ])),
            (down, question(
                "Is this linked to inflationary pressure or the need for policy to respond?",
                [
                    ("yes, linked", terminal(down_side[0], f"{down[0].upper() + down[1:]}, with policy implications.")),
                    ("no, not linked", terminal(down_side[1], f"{down[0].upper() + down[1:]}, without a stated policy link.")),
                ])),
            ("broadly stable or mixed", terminal("neutral", "No clear direction.")),
            ("not discussed", terminal("neutral", "Topic is not discussed.")),
        ])


def surface(name, phrases):
    base = name.split(" (")[0]
    return f"{base} (e.g. {', '.join(phrases[:3])}, etc.)"


def build():
    topics = []
    for mnemonic, name, subject, up, down, polarity, phrases in TOPICS:
        tree = inflation_tree() if mnemonic == "CORE-INFLATION" else directional_tree(subject, up, down, polarity)
        topics.append({
            "mnemonic": mnemonic,
            "name": name,
            "theme": THEMES[mnemonic.split("-")[0]],
            "surface": surface(name, phrases),
            "phrases": phrases,
            "tree": tree,
        })
    assert len(topics) == 66, len(topics)
    return {
        "schema_version": 1,
        "version": "reference-2025.1 (repository-authored trees and phrases)",
        "topics": topics,
    }


if __name__ == "__main__":
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "taxonomy" / "reference.json"
    out.write_text(json.dumps(build(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    print(out)
