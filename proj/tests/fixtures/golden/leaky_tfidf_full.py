import pandas as pd
from sklearn.feature_extraction.text import TfidfVectorizer
from sklearn.model_selection import train_test_split
from sklearn.naive_bayes import MultinomialNB

df = pd.read_csv("reviews.csv")
texts = df["text"]
labels = df["sentiment"]
vec = TfidfVectorizer()
features = vec.fit_transform(texts)
X_train, X_test, y_train, y_test = train_test_split(features, labels)
nb = MultinomialNB()
nb.fit(X_train, y_train)
nb.predict(X_test)
