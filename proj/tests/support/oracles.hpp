#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testutil {

inline std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

/// Direct evaluation of Okapi BM25 over lowercase space-separated corpora.
inline double brute_bm25(const std::vector<std::string>& docs, std::size_t id, const std::string& query, double k1,
                  double b) {
  const double n = static_cast<double>(docs.size());
  double total_len = 0;
  for (const auto& d : docs) total_len += static_cast<double>(split_words(d).size());
  const double avgdl = total_len / n;
  const auto doc = split_words(docs[id]);
  double score = 0;
  for (const auto& q : split_words(query)) {
    double df = 0;
    for (const auto& d : docs) {
      const auto w = split_words(d);
      if (std::find(w.begin(), w.end(), q) != w.end()) df += 1;
    }
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    const double tf = static_cast<double>(std::count(doc.begin(), doc.end(), q));
    score += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * static_cast<double>(doc.size()) / avgdl));
  }
  return score;
}

inline double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

inline double logistic_draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(1e-12, 1.0 - 1e-12);
  const double v = u(rng);
  return std::log(v / (1.0 - v));
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Binary logit P(y=1) = logistic(w0 + x'w) by IRLS; returns (w0, w...).
inline std::vector<double> irls_logit(const std::vector<std::vector<double>>& x, const std::vector<int>& y01) {
  const std::size_t p = x[0].size() + 1;
  std::vector<double> w(p, 0.0);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<std::vector<double>> h(p, std::vector<double>(p, 0.0));
    std::vector<double> g(p, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::vector<double> z = {1.0};
      z.insert(z.end(), x[i].begin(), x[i].end());
      double eta = 0.0;
      for (std::size_t j = 0; j < p; ++j) eta += w[j] * z[j];
      const double mu = logistic(eta);
      for (std::size_t j = 0; j < p; ++j) {
        g[j] += (y01[i] - mu) * z[j];
        for (std::size_t k = 0; k < p; ++k) h[j][k] += mu * (1 - mu) * z[j] * z[k];
      }
    }
    const auto step = solve(h, g);
    double biggest = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      w[j] += step[j];
      biggest = std::max(biggest, std::abs(step[j]));
    }
    if (biggest < 1e-12) break;
  }
  return w;
}

/// Mnemonic and name of each reference topic, in taxonomy order.
inline const std::vector<std::pair<std::string, std::string>> kReferenceTopics = {
    {"EC-FORECAST", "Forecasting (including Consensus Economics, Scenarios, etc.)"},
    {"EC-INDICATOR", "Economic Indicators (including Noise, Seasonal Adjustment)"},
    {"POL-MONETARY", "Monetary Policy"},
    {"POL-STIMULUS", "Economic Stimulus (incl. Government Grants, Incentives, Rebates, Subsidies)"},
    {"POL-FISCAL", "Fiscal Policy (incl. austerity)"},
    {"POL-GOVBUDGET", "Government Budget (Deficits and Surpluses)"},
    {"POL-TAX", "Taxation"},
    {"POL-LEGISLATIONREGULATION", "Legislation and Regulation"},
    {"CORE-INFLATION", "Inflation and Inflationary Pressures"},
    {"CORE-INFLATIONEXPECTATIONS", "Inflation Expectations"},
    {"CORE-TARGET", "Inflation Target (2-3 per cent)"},
    {"CORE-PRODUCTIVITY", "Productivity"},
    {"CORE-CAPACITY", "Productive Capacity (e.g. aggregate demand/supply, capacity)"},
    {"CORE-LABOUREXTENSIVE",
     "Labour Market, Extensive Margin (e.g. Employment, Unemployment, Participation, Hires and Quits, Layoffs)"},
    {"CORE-LABOURINTENSIVE", "Labour Market, Intensive Margin (e.g. Hours Worked, Underutilisation, Part vs Full Time)"},
    {"CORE-LABOURCAPACITY", "Labour Market Capacity (e.g. labour market slack or tightness, the NAIRU)"},
    {"CORE-SKILLS", "Worker Skills and Human Capital"},
    {"CORE-WAGES", "Wages, Salaries, and Employee Compensation (including Enterprise Bargaining)"},
    {"CORE-ACTIVITY", "GDP and Economic Activity (e.g. Domestic Demand, National Accounts)"},
    {"CORE-SUPPLYSHOCKS", "Supply Shocks"},
    {"CORE-DEMANDSHOCKS", "Demand Shocks"},
    {"CORE-DISRUPTION", "Economic Disruption (e.g. trade tensions, COVID-19 pandemic)"},
    {"CORE-BUSACTIVITY", "Business Activity (e.g. Profits and Solvency, Inventories)"},
    {"CORE-CYCLES", "Economic Cycles (Recessions and Expansions)"},
    {"CORE-FINDISRUPTION", "Financial Crises"},
    {"CORE-HOUSEHOLDINCOMES", "Household Incomes and Budgets"},
    {"CORE-WEALTH", "Wealth"},
    {"CORE-COMPETITION", "Competition"},
    {"CORE-INVESTMENT", "Investment and Capital Expenditure"},
    {"CORE-CONSUMPTION", "Consumption"},
    {"CORE-TRADABLENONTRADEABLE", "Tradable and Non-Tradable Sectors"},
    {"CORE-MANUF", "Manufacturing Sector"},
    {"CORE-SERVICES", "Services Sector"},
    {"CORE-AFFORDABILITY", "Affordability and Cost of Living"},
    {"CORE-CAPITALSTOCK", "Capital Stock (incl. infrastructure)"},
    {"RE-COMMERCIAL", "Commercial Real Estate"},
    {"RE-RESIDENTIAL", "Residential Real Estate (e.g. Housing, Rents, Dwelling Construction and Investment)"},
    {"RE-CONSTRUCTION", "Building Approvals and Construction"},
    {"CREDIT-INTERESTRATES", "The official cash rate or other interest rates"},
    {"CREDIT-VOLATILITY", "Financial volatility"},
    {"CREDIT-BANKING", "Banking Sector (including Resolution and Macroprudential Policies)"},
    {"CREDIT-CREDITGROWTH", "Credit Growth and Allocation"},
    {"CREDIT-PRICING", "Credit and Asset Pricing (e.g. Asset Prices, Yield Curves)"},
    {"CREDIT-EQUITIES", "Equities Markets"},
    {"CREDIT-BONDS", "Bond Markets and Securitisation (e.g. RMBS, ABS)"},
    {"CREDIT-HOUSEHOLDDEBT", "Household Debt (e.g. Mortgages, Credit Cards)"},
    {"CREDIT-CORPDEBT", "Corporate Debt (e.g. Corporate Bonds, Business Loans)"},
    {"CREDIT-GOVTDEBT", "Government Debt (e.g. Australian Government Securities, Treasury Bills)"},
    {"CREDIT-INFRASTRUCTURE", "Financial Market Infrastructure (e.g. central counterparties, stock exchanges)"},
    {"RISK-CONFIDENCE", "Consumer and Business Confidence"},
    {"RISK-FINRISK", "Financial risks (e.g. credit risk, duration risk, risk-on or risk-off sentiment)"},
    {"RISK-GEOPOLITICAL", "Geopolitical risk (e.g. war, terrorist attacks)"},
    {"RISK-INSURANCE", "Insurance"},
    {"EXT-CURRENCIES", "Currencies"},
    {"EXT-INTLECON", "International Economics and Capital Flows"},
    {"EXT-TRADE", "Trade (e.g. Imports and Exports)"},
    {"EXT-MINING", "Mining and Resources Sector Activity"},
    {"EXT-COMMODITIES", "Oil and Bulk Commodity Markets (e.g. Oil, Gas, Iron Ore)"},
    {"EXT-AGRICULTURAL", "Agricultural Commodities"},
    {"EXT-INTLMONETARYPOLICY", "International Monetary Policy Comparisons"},
    {"FUN-DEMOGRAPHICS", "Demographics and Population (including International Students and Migration)"},
    {"FUN-CLIMATE", "Weather Events and Environmental Policies"},
    {"SAV-SAVING", "Saving"},
    {"SAV-SUPER", "Superannuation Schemes"},
    {"OTH-CBGOVERNANCE", "Central Bank Governance"},
    {"OTH-ORGANISATIONS", "International Organisations (e.g. IMF, Chinese Communist Party, ASEAN)"},
};

}  // namespace testutil
